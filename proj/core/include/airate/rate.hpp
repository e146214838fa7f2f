#pragma once

#include <optional>
#include <string_view>

namespace airate {

enum class RateMethod {
  kExactGaussHermite,
  kExactMonteCarlo,
  kApproxSphere,
  kApproxAsymptotic,
  kCapacity,
  kUpperBound,
};

/// CLI spelling of a method ("exact-gh", "approx", ...).
std::string_view method_name(RateMethod method) noexcept;
std::optional<RateMethod> parse_method(std::string_view name) noexcept;

/// A rate in bits/symbol/dimension together with the method that produced it.
struct RateResult {
  double value = 0.0;
  RateMethod method = RateMethod::kCapacity;
  int dimension = 1;
  std::optional<double> std_error;

  /// Rate per (possibly two-dimensional) symbol.
  double per_symbol() const noexcept { return value * dimension; }
};

}  // namespace airate
