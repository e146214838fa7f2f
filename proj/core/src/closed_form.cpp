#include "airate/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "airate/errors.hpp"

namespace airate {

namespace {

constexpr double kHalfLog2e = 0.5 * std::numbers::log2e;

void require_cardinality(int m) {
  if (m < 2 || m > kMaxCardinality) {
    throw CardinalityError("cardinality must lie in [2, 2^20], got " + std::to_string(m));
  }
}

double log2_1p(double x) { return std::log1p(x) * std::numbers::log2e; }

double sphere_pam(double m, double gamma) {
  return 0.5 * (log2_1p(gamma) - log2_1p(gamma / (m * m)));
}

long long next_pow2(double x, int exponent_step) {
  if (!(x <= 0x1.0p62)) throw DomainError("minimum cardinality exceeds the representable range");
  long long p = 1;
  while (static_cast<double>(p) < x) p <<= exponent_step;
  return p;
}

}  // namespace

RateResult capacity_awgn(Snr snr) {
  return {0.5 * log2_1p(snr.linear()), RateMethod::kCapacity, 1, std::nullopt};
}

RateResult approx_pam(int m, Snr snr) {
  require_cardinality(m);
  return {sphere_pam(m, snr.linear()), RateMethod::kApproxSphere, 1, std::nullopt};
}

RateResult approx_qam(int m, Snr snr) {
  require_cardinality(m);
  const int side = exact_sqrt(m);
  if (side < 2) throw CardinalityError("QAM cardinality must be a perfect square >= 4");
  return {sphere_pam(side, snr.linear()), RateMethod::kApproxSphere, 2, std::nullopt};
}

RateResult approx_asymptotic_bpsk(Snr snr) {
  const double value = 1.0 - log2_1p(std::exp(-snr.linear()));
  return {value, RateMethod::kApproxAsymptotic, 1, std::nullopt};
}

RateResult approx_asymptotic_qpsk(Snr snr) {
  RateResult r = approx_asymptotic_bpsk(snr);
  r.dimension = 2;
  return r;
}

RateResult rate_upper_bound(int m, int dimension, Snr snr) {
  require_cardinality(m);
  if (dimension < 1) throw DomainError("dimension must be positive");
  const double entropy = std::log2(static_cast<double>(m)) / dimension;
  return {std::min(capacity_awgn(snr).value, entropy), RateMethod::kUpperBound, dimension,
          std::nullopt};
}

double approx_pam_derivative(int m, Snr snr) {
  require_cardinality(m);
  const double m2 = static_cast<double>(m) * m;
  const double g = snr.linear();
  return kHalfLog2e * (m2 - 1.0) / ((1.0 + g) * (m2 + g));
}

double approx_pam_second_derivative(int m, Snr snr) {
  require_cardinality(m);
  const double m2 = static_cast<double>(m) * m;
  const double g = snr.linear();
  const double a = (1.0 + g) * (m2 + g);
  return kHalfLog2e * (1.0 - m2) * (1.0 + m2 + 2.0 * g) / (a * a);
}

RateResult low_snr_approx_pam(int m, Snr snr) {
  require_cardinality(m);
  const double m2 = static_cast<double>(m) * m;
  return {(1.0 - 1.0 / m2) * kHalfLog2e * snr.linear(), RateMethod::kApproxSphere, 1,
          std::nullopt};
}

MminResult mmin(Snr snr, Modulation kind) {
  const double g = snr.linear();
  MminResult r;
  if (kind == Modulation::kPam) {
    r.exact_value = 2.0 * std::max(1.0, std::sqrt(g));
    r.rounded_pow2 = next_pow2(r.exact_value, 1);
    r.upper_bound = 2.0 * std::sqrt(1.0 + g);
  } else {
    r.exact_value = 4.0 * std::max(1.0, g);
    r.rounded_pow2 = next_pow2(r.exact_value, 2);
    r.upper_bound = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

}  // namespace airate
