#include "airate/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "airate/closed_form.hpp"
#include "airate/errors.hpp"

namespace airate {

namespace {

constexpr double kHalfLog2e = 0.5 * std::numbers::log2e;

void require_stream(int m, double gain) {
  if (m < 2 || m > kMaxCardinality) {
    throw CardinalityError("stream cardinality must lie in [2, 2^20], got " + std::to_string(m));
  }
  if (!(gain > 0.0) || !std::isfinite(gain)) throw DomainError("stream gain must be positive");
}

void validate(const AllocationProblem& problem) {
  if (problem.gains.empty()) throw DomainError("allocation needs at least one stream");
  if (problem.gains.size() != problem.cardinalities.size()) {
    throw DomainError("gains and cardinalities differ in length");
  }
  for (std::size_t k = 0; k < problem.gains.size(); ++k) {
    require_stream(problem.cardinalities[k], problem.gains[k]);
  }
  if (!(problem.budget > 0.0) || !std::isfinite(problem.budget)) {
    throw DomainError("power budget must be positive");
  }
  if (std::isnan(problem.tolerance)) throw DomainError("tolerance must be a number");
}

double total_power(const AllocationProblem& problem, double lambda) {
  double total = 0.0;
  for (std::size_t k = 0; k < problem.gains.size(); ++k) {
    total += stream_power_at_level(problem.cardinalities[k], problem.gains[k], lambda);
  }
  return total;
}

}  // namespace

double marginal_rate(int m, double gain, double power) {
  require_stream(m, gain);
  if (!(power >= 0.0)) throw DomainError("stream power must be non-negative");
  const double m2 = static_cast<double>(m) * m;
  const double x = power * gain;
  return gain * kHalfLog2e * (m2 - 1.0) / ((1.0 + x) * (m2 + x));
}

double stream_power_at_level(int m, double gain, double lambda) {
  require_stream(m, gain);
  if (!(lambda > 0.0)) throw DomainError("water level must be positive");
  const double m2 = static_cast<double>(m) * m;
  const double c = gain * kHalfLog2e * (m2 - 1.0) / lambda;
  if (c <= m2) return 0.0;
  // Positive root of x^2 + (m^2 + 1) x + (m^2 - c) = 0, written without cancellation.
  const double disc = std::sqrt((m2 - 1.0) * (m2 - 1.0) + 4.0 * c);
  const double x = 2.0 * (c - m2) / ((m2 + 1.0) + disc);
  return x / gain;
}

double sum_rate(const AllocationProblem& problem, const std::vector<double>& powers) {
  double total = 0.0;
  for (std::size_t k = 0; k < powers.size(); ++k) {
    const double snr = powers[k] * problem.gains[k];
    if (snr > 0.0) total += approx_pam(problem.cardinalities[k], Snr::from_linear(snr)).value;
  }
  return total;
}

AllocationSolution allocate(const AllocationProblem& problem) {
  validate(problem);
  const std::size_t streams = problem.gains.size();
  const double budget = problem.budget;

  double lambda_hi = 0.0;
  for (std::size_t k = 0; k < streams; ++k) {
    lambda_hi = std::max(lambda_hi, marginal_rate(problem.cardinalities[k], problem.gains[k], 0.0));
  }

  // Total demanded power is zero at lambda_hi and grows without bound as
  // lambda -> 0; walk down geometrically until the budget is covered.
  int steps = 0;
  double lambda_lo = lambda_hi;
  while (total_power(problem, lambda_lo) < budget) {
    if (++steps > kMaxBisectionSteps) throw ConvergenceError("could not bracket the water level");
    lambda_hi = lambda_lo;
    lambda_lo *= 0.5;
  }

  double lambda = lambda_lo;
  double demand = total_power(problem, lambda);
  while (std::abs(demand - budget) > problem.tolerance * budget) {
    if (++steps > kMaxBisectionSteps) {
      throw ConvergenceError("power balance not met within " +
                             std::to_string(kMaxBisectionSteps) + " bisection steps");
    }
    lambda = std::sqrt(lambda_lo * lambda_hi);
    demand = total_power(problem, lambda);
    if (demand > budget) {
      lambda_lo = lambda;
    } else {
      lambda_hi = lambda;
    }
  }

  AllocationSolution sol;
  sol.lambda = lambda;
  sol.iterations = steps;
  sol.powers.resize(streams);
  for (std::size_t k = 0; k < streams; ++k) {
    sol.powers[k] = stream_power_at_level(problem.cardinalities[k], problem.gains[k], lambda);
  }
  // Spread the residual mismatch over the active streams so the budget is met exactly.
  const double scale = budget / demand;
  for (double& p : sol.powers) p *= scale;

  sol.rates.resize(streams);
  for (std::size_t k = 0; k < streams; ++k) {
    const double snr = sol.powers[k] * problem.gains[k];
    sol.rates[k] =
        snr > 0.0 ? approx_pam(problem.cardinalities[k], Snr::from_linear(snr)).value : 0.0;
    sol.objective += sol.rates[k];
    if (sol.powers[k] > 0.0) {
      const double marginal =
          marginal_rate(problem.cardinalities[k], problem.gains[k], sol.powers[k]);
      sol.kkt_residual = std::max(sol.kkt_residual, std::abs(marginal - lambda));
    }
  }
  return sol;
}

}  // namespace airate
