// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "airate/allocation.hpp"
#include "airate/closed_form.hpp"
#include "airate/constellation.hpp"
#include "airate/exact_mi.hpp"
#include "oracles.hpp"

using namespace airate;

namespace {

using Clock = std::chrono::steady_clock;

struct Report {
  int failures = 0;

  void line(int id, bool pass, const std::string& name, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("[%s] criterion %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
  }
  static void info(int id, const std::string& detail) {
    std::printf("[INFO] criterion %d: %s\n", id, detail.c_str());
  }
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> db_grid(double from, double to, double step) {
  std::vector<double> grid;
  const auto n = static_cast<long>(std::llround((to - from) / step));
  for (long k = 0; k <= n; ++k) grid.push_back(from + step * static_cast<double>(k));
  return grid;
}

std::vector<double> db_linspace(double from, double to, int points) {
  std::vector<double> grid;
  for (int k = 0; k < points; ++k) grid.push_back(from + (to - from) * k / (points - 1));
  return grid;
}

double gh(int m, double gamma, int nodes = 64) {
  return mi_pam_quadrature(make_pam(m), Snr::from_linear(gamma), {nodes}).value;
}

void sphere_accuracy(Report& report) {
  const auto start = Clock::now();
  const std::vector<std::pair<int, double>> limits{{2, 0.35}, {8, 0.12}, {64, 0.07}};
  bool pass = true;
  std::string detail;
  double worst_abs = 0.0;
  for (const auto& [m, limit] : limits) {
    double max_abs = 0.0;
    for (double db : db_grid(-10.0, 40.0, 0.25)) {
      const Snr snr = Snr::from_db(db);
      max_abs = std::max(max_abs, std::abs(approx_pam(m, snr).value - gh(m, snr.linear())));
    }
    const double rel = max_abs / std::log2(m);
    worst_abs = std::max(worst_abs, max_abs);
    pass = pass && rel <= limit;
    detail += fmt("M=%d rel %.4f (<= %.2f); ", m, rel, limit);
  }
  const double elapsed = seconds_since(start);
  pass = pass && worst_abs <= 0.35 && elapsed < 10.0;
  report.line(1, pass, "sphere approximation accuracy",
              detail + fmt("max abs %.4f b (<= 0.35); %.2f s (< 10 s)", worst_abs, elapsed));
}

void asymptotic_accuracy(Report& report) {
  const auto start = Clock::now();
  double max_rel = 0.0, argmax = 0.0, max_abs = 0.0;
  bool doubled = true;
  for (double db : db_grid(-13.0, 20.0, 0.05)) {
    const Snr snr = Snr::from_db(db);
    const double exact = gh(2, snr.linear());
    const double asym = approx_asymptotic_bpsk(snr).value;
    const double rel = std::abs(asym - exact) / exact;
    if (rel > max_rel) {
      max_rel = rel;
      argmax = db;
    }
    max_abs = std::max(max_abs, std::abs(asym - exact));
    doubled = doubled && approx_asymptotic_qpsk(snr).per_symbol() == 2.0 * asym;
  }
  const double elapsed = seconds_since(start);
  report.line(2, max_rel <= 0.10 && doubled && elapsed < 5.0, "asymptotic approximation accuracy",
              fmt("2-PAM max |C_asym - C_M| / C_M %.4f at %.2f dB (<= 0.10); 4-QAM = 2 x 2-PAM "
                  "%s; %.2f s (< 5 s)",
                  max_rel, argmax, doubled ? "yes" : "no", elapsed));
  Report::info(2, fmt("max |C_asym - C_M| / log2 M = %.4f", max_abs));
}

void bound_ordering(Report& report) {
  bool pass = true;
  std::string detail;
  for (int m : {2, 4, 8, 16, 32, 64}) {
    double worst_excess = -INFINITY, worst_db = 0.0;
    bool ok = true;
    for (double db : db_linspace(-10.0, 40.0, 200)) {
      const Snr snr = Snr::from_db(db);
      const double ca = approx_pam(m, snr).value;
      const double cm = gh(m, snr.linear());
      const double cap = std::min(capacity_awgn(snr).value, std::log2(m));
      ok = ok && ca >= 0.0 && ca <= cm + 1e-6 && cm <= cap + 1e-6;
      if (ca - cm > worst_excess) {
        worst_excess = ca - cm;
        worst_db = db;
      }
    }
    pass = pass && ok;
    detail += ok ? fmt("M=%d ok; ", m)
                 : fmt("M=%d C_a - C_M up to %.3g at %.2f dB; ", m, worst_excess, worst_db);
  }
  detail.resize(detail.size() - 2);
  report.line(3, pass, "bound ordering", detail);
}

void saturation(Report& report) {
  bool pass = true;
  std::string detail;
  for (int m : {2, 4, 8}) {
    const double gap = std::abs(gh(m, 100.0 * m * m) - std::log2(m));
    pass = pass && gap < 0.01;
    detail += fmt("M=%d |C_M - log2 M| %.2g; ", m, gap);
  }
  double low = 0.0;
  for (int m : {2, 4, 8, 16, 64}) low = std::max(low, gh(m, 1e-4));
  pass = pass && low < 1e-4;
  report.line(4, pass, "saturation and limits",
              detail + fmt("max C_M at snr 1e-4 %.3g (< 1e-4)", low));
}

// Sphere-packing rate evaluated in extended precision for the difference quotients.
long double sphere_rate_ld(int m, long double g) {
  const long double m2 = static_cast<long double>(m) * m;
  return 0.5L * std::log2((1.0L + g) / (1.0L + g / m2));
}

void derivatives(Report& report) {
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<int> log_m(1, 10);
  std::uniform_real_distribution<double> db(-10.0, 40.0);
  double worst1 = 0.0, worst2 = 0.0;
  bool signs = true;
  for (int k = 0; k < 50; ++k) {
    const int m = 1 << log_m(rng);
    const Snr snr = Snr::from_db(db(rng));
    const long double g = snr.linear();
    const long double h1 = g * 1e-4L, h2 = g * 1e-3L;
    const double fd1 = static_cast<double>(
        (sphere_rate_ld(m, g + h1) - sphere_rate_ld(m, g - h1)) / (2.0L * h1));
    const double fd2 = static_cast<double>(
        (sphere_rate_ld(m, g + h2) - 2.0L * sphere_rate_ld(m, g) + sphere_rate_ld(m, g - h2)) /
        (h2 * h2));
    const double d1 = approx_pam_derivative(m, snr);
    const double d2 = approx_pam_second_derivative(m, snr);
    worst1 = std::max(worst1, std::abs(d1 - fd1) / std::abs(fd1));
    worst2 = std::max(worst2, std::abs(d2 - fd2) / std::abs(fd2));
    signs = signs && d1 > 0.0 && d2 < 0.0;
  }
  report.line(5, worst1 < 1e-6 && worst2 < 1e-4 && signs, "derivative identities",
              fmt("50 points, first rel err %.2g (< 1e-6), second rel err %.2g (< 1e-4), "
                  "signs %s",
                  worst1, worst2, signs ? "ok" : "violated"));
}

void oracle_equivalence(Report& report) {
  double worst_sigmas = 0.0, worst_self = 0.0;
  int worst_m = 2;
  double worst_db = 0.0;
  for (int m : {2, 4, 8, 16}) {
    for (double db : {-5.0, 0.0, 5.0, 10.0, 20.0}) {
      const Snr snr = Snr::from_db(db);
      const auto pam = make_pam(m);
      const double q64 = mi_pam_quadrature(pam, snr, {64}).value;
      const double q128 = mi_pam_quadrature(pam, snr, {128}).value;
      const auto mc = mi_pam_montecarlo(pam, snr, {1'000'000, 0x5EED});
      const double se = *mc.std_error;
      const double diff = std::abs(q64 - mc.value);
      const double sigmas = diff == 0.0 ? 0.0 : diff / se;
      if (sigmas > worst_sigmas) {
        worst_sigmas = sigmas;
        worst_m = m;
        worst_db = db;
      }
      worst_self = std::max(worst_self, std::abs(q64 - q128));
    }
  }
  report.line(6, worst_sigmas <= 3.0 && worst_self < 1e-8, "oracle equivalence",
              fmt("max |GH - MC| / std error %.2f at M=%d %.0f dB (<= 3); max |GH64 - GH128| "
                  "%.2g (< 1e-8)",
                  worst_sigmas, worst_m, worst_db, worst_self));
  const auto pam = make_pam(worst_m);
  const Snr snr = Snr::from_db(worst_db);
  const auto mc = mi_pam_montecarlo(pam, snr, {10'000'000, 0x5EED});
  Report::info(6, fmt("same point with 10^7 samples: |GH - MC| / std error %.2f",
                      std::abs(mi_pam_quadrature(pam, snr).value - mc.value) / *mc.std_error));
}

void mmin_behavior(Report& report) {
  bool pass = true;
  std::string detail;
  for (double g : {10.0, 100.0, 1000.0}) {
    const Snr snr = Snr::from_linear(g);
    const int m = static_cast<int>(std::ceil(2.0 * std::sqrt(g)));
    const double gap = capacity_awgn(snr).value - approx_pam(m, snr).value;
    pass = pass && gap <= 0.17;
    detail += fmt("snr %g M=%d gap %.4f; ", g, m, gap);
  }
  for (double g : {1.0, 10.0, 100.0, 1000.0, 1e4, 1e6}) {
    const auto r = mmin(Snr::from_linear(g), Modulation::kPam);
    pass = pass && r.exact_value <= 2.0 * std::sqrt(1.0 + g);
  }
  report.line(7, pass, "M_min behavior",
              detail + "formula <= 2 sqrt(1 + snr) checked at snr 1..1e6");
}

void allocation(Report& report) {
  const auto start = Clock::now();
  std::mt19937_64 rng(0xA110C);
  std::uniform_int_distribution<int> pick_k(1, 3), pick_m(0, 2);
  std::uniform_real_distribution<double> log_gain(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> budget_dist(0.5, 20.0);
  double worst_gap = -INFINITY, worst_kkt = 0.0, worst_sum = 0.0;
  for (int n = 0; n < 20; ++n) {
    AllocationProblem p;
    const int k = pick_k(rng);
    for (int i = 0; i < k; ++i) {
      p.gains.push_back(std::exp(log_gain(rng)));
      p.cardinalities.push_back(2 << pick_m(rng));
    }
    p.budget = budget_dist(rng);
    const auto sol = allocate(p);
    const auto best = oracle::grid_search_allocation(p.gains, p.cardinalities, p.budget,
                                                     p.budget / 400.0, 4);
    double total = 0.0;
    for (double x : sol.powers) total += x;
    worst_gap = std::max(worst_gap, best.objective - sol.objective);
    worst_kkt = std::max(worst_kkt, sol.kkt_residual / sol.lambda);
    worst_sum = std::max(worst_sum, std::abs(total - p.budget) / p.budget);
  }
  double worst_asym = 0.0;
  for (int k : {2, 3}) {
    for (int m : {2, 4, 8}) {
      for (double g : {0.1, 1.0, 10.0}) {
        const auto sol = allocate({std::vector<double>(k, g), std::vector<int>(k, m), 7.0});
        const auto [lo, hi] = std::minmax_element(sol.powers.begin(), sol.powers.end());
        worst_asym = std::max(worst_asym, (*hi - *lo) / 7.0);
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = worst_gap <= 1e-8 && worst_kkt <= 1e-8 && worst_sum <= 1e-10 &&
                    worst_asym <= 1e-12 && elapsed < 30.0;
  report.line(8, pass, "allocation optimality",
              fmt("20 instances, oracle - solver %.2g (<= 1e-8), KKT / lambda %.2g (<= 1e-8), "
                  "|sum p - P| / P %.2g (<= 1e-10), symmetric spread %.2g; %.2f s (< 30 s)",
                  worst_gap, worst_kkt, worst_sum, worst_asym, elapsed));
}

}  // namespace

int main() {
  Report report;
  const std::vector<std::function<void(Report&)>> criteria{
      sphere_accuracy, asymptotic_accuracy, bound_ordering, saturation,
      derivatives,     oracle_equivalence,  mmin_behavior,  allocation};
  for (const auto& criterion : criteria) criterion(report);
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - report.failures,
              criteria.size());
  return report.failures == 0 ? 0 : 1;
}
