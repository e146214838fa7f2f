#include "airate/exact_mi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "airate/errors.hpp"
#include "airate/gauss_hermite.hpp"

namespace airate {

namespace {


std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) noexcept {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform in (0, 1].
double to_unit_open_closed(std::uint64_t x) noexcept {
  return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

void require_pam(const Constellation& c) {
  if (c.kind() != Modulation::kPam) throw DomainError("expected a PAM constellation");
}

void require_qam(const Constellation& c) {
  if (c.kind() != Modulation::kQam) throw DomainError("expected a QAM constellation");
}

// log of sum_i exp(e_i), with the largest term factored out.
double log_sum_exp(std::span<const double> exponents) {
  const auto top = std::max_element(exponents.begin(), exponents.end());
  const double peak = *top;
  double rest = 0.0;
  for (auto it = exponents.begin(); it != exponents.end(); ++it) {
    if (it != top) rest += std::exp(*it - peak);
  }
  return peak + std::log1p(rest);
}

// log2 of sum_i exp(-(gamma d_ij^2)/2 - sqrt(gamma) n d_ij) for noise z = n * sigma0.
class InnerSum {
 public:
  InnerSum(std::span<const double> levels, double gamma)
      : levels_(levels), half_gamma_(0.5 * gamma), sqrt_gamma_(std::sqrt(gamma)),
        exponents_(levels.size()) {}

  double log2_at(std::size_t j, double unit_noise) {
    const double aj = levels_[j];
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const double d = levels_[i] - aj;
      exponents_[i] = -half_gamma_ * d * d - sqrt_gamma_ * unit_noise * d;
    }
    return log_sum_exp(exponents_) * std::numbers::log2e;
  }

 private:
  std::span<const double> levels_;
  double half_gamma_;
  double sqrt_gamma_;
  std::vector<double> exponents_;
};

double clamp_rate(double value, double ceiling) { return std::clamp(value, 0.0, ceiling); }

}  // namespace

RateResult mi_pam_quadrature(const Constellation& pam, Snr snr, QuadratureSpec spec) {
  require_pam(pam);
  if (spec.nodes < kMinQuadratureNodes || spec.nodes > kMaxGaussHermiteNodes) {
    throw DomainError("quadrature node count must lie in [" +
                      std::to_string(kMinQuadratureNodes) + ", " +
                      std::to_string(kMaxGaussHermiteNodes) + "]");
  }
  const GaussHermiteRule& rule = cached_gauss_hermite_rule(spec.nodes);

  // Unit-variance noise n = sqrt(2) s t. With s < 1 the Gaussian weight no
  // longer matches exp(-t^2) and each weight picks up s exp((1 - s^2) t^2).
  const double scale =
      std::min(1.0, kQuadratureReach / (std::numbers::sqrt2 * rule.nodes.back()));
  std::vector<double> noise(rule.nodes.size());
  std::vector<double> weight(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double t = rule.nodes[k];
    noise[k] = std::numbers::sqrt2 * scale * t;
    weight[k] = scale * std::exp(rule.log_weights[k] + (1.0 - scale * scale) * t * t);
    if (!std::isfinite(weight[k])) throw NumericalError("non-finite quadrature weight");
  }

  const auto& levels = pam.levels();
  const std::size_t m = levels.size();
  InnerSum inner(levels, snr.linear());

  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double expectation = 0.0;
    for (std::size_t k = 0; k < noise.size(); ++k) {
      expectation += weight[k] * inner.log2_at(j, noise[k]);
    }
    total += expectation;
  }
  const double mean_log = total / (static_cast<double>(m) * std::sqrt(std::numbers::pi));
  const double entropy = std::log2(static_cast<double>(m));
  const double value = entropy - mean_log;
  if (!std::isfinite(value)) throw NumericalError("non-finite mutual information");

  return RateResult{clamp_rate(value, entropy), RateMethod::kExactGaussHermite, 1, std::nullopt};
}

RateResult mi_pam_montecarlo(const Constellation& pam, Snr snr, McSpec spec) {
  require_pam(pam);
  if (spec.samples < kMinMcSamples) {
    throw DomainError("Monte-Carlo estimate needs at least 10^4 samples");
  }
  const auto& levels = pam.levels();
  const std::size_t m = levels.size();
  const double entropy = std::log2(static_cast<double>(m));
  InnerSum inner(levels, snr.linear());

  // Welford running mean / variance of the per-sample integrand.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t s = 0; s < spec.samples; ++s) {
    const auto base = static_cast<std::uint64_t>(s) * 3;
    const std::uint64_t pick = splitmix64(spec.seed, base);
    const auto j = static_cast<std::size_t>(((pick >> 32) * m) >> 32);
    const double u1 = to_unit_open_closed(splitmix64(spec.seed, base + 1));
    const double u2 = to_unit_open_closed(splitmix64(spec.seed, base + 2));
    const double noise = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);

    const double sample = entropy - inner.log2_at(j, noise);
    const double delta = sample - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (sample - mean);
  }
  const auto n = static_cast<double>(spec.samples);
  const double std_error = std::sqrt(m2 / (n - 1.0) / n);
  if (!std::isfinite(mean) || !std::isfinite(std_error)) {
    throw NumericalError("non-finite Monte-Carlo estimate");
  }
  return RateResult{mean, RateMethod::kExactMonteCarlo, 1, std_error};
}

RateResult mi_qam(const Constellation& qam, Snr snr, QuadratureSpec spec) {
  require_qam(qam);
  RateResult axis = mi_pam_quadrature(make_pam(exact_sqrt(qam.m())), snr, spec);
  axis.dimension = 2;
  return axis;
}

RateResult mi_qam_montecarlo(const Constellation& qam, Snr snr, McSpec spec) {
  require_qam(qam);
  RateResult axis = mi_pam_montecarlo(make_pam(exact_sqrt(qam.m())), snr, spec);
  axis.dimension = 2;
  return axis;
}

RateResult exact_mi_quadrature(const Constellation& c, Snr snr, QuadratureSpec spec) {
  return c.kind() == Modulation::kPam ? mi_pam_quadrature(c, snr, spec) : mi_qam(c, snr, spec);
}

RateResult exact_mi_montecarlo(const Constellation& c, Snr snr, McSpec spec) {
  return c.kind() == Modulation::kPam ? mi_pam_montecarlo(c, snr, spec)
                                      : mi_qam_montecarlo(c, snr, spec);
}

}  // namespace airate
