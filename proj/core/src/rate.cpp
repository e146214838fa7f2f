#include "airate/rate.hpp"

#include <array>
#include <utility>

namespace airate {

namespace {

constexpr std::array<std::pair<RateMethod, std::string_view>, 6> kMethodNames{{
    {RateMethod::kExactGaussHermite, "exact-gh"},
    {RateMethod::kExactMonteCarlo, "exact-mc"},
    {RateMethod::kApproxSphere, "approx"},
    {RateMethod::kApproxAsymptotic, "asymptotic"},
    {RateMethod::kCapacity, "capacity"},
    {RateMethod::kUpperBound, "bound"},
}};

}  // namespace

std::string_view method_name(RateMethod method) noexcept {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

std::optional<RateMethod> parse_method(std::string_view name) noexcept {
  for (const auto& [m, n] : kMethodNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

}  // namespace airate
