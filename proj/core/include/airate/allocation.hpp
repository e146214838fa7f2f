#pragma once

#include <vector>

namespace airate {

/// Sum-rate power allocation over parallel PAM streams using the
/// sphere-packing rate of each stream:
///
///   maximize  sum_k approx_pam(m_k, p_k g_k)  s.t.  sum_k p_k = budget, p_k >= 0.
///
/// A QAM stream is two PAM streams with the same gain.
struct AllocationProblem {
  std::vector<double> gains;      ///< SNR per unit power, each > 0.
  std::vector<int> cardinalities; ///< PAM sizes m_k >= 2.
  double budget = 1.0;
  double tolerance = 1e-10;       ///< Relative power-balance tolerance.
};

struct AllocationSolution {
  std::vector<double> powers;
  std::vector<double> rates;
  double objective = 0.0;
  double lambda = 0.0;        ///< Common marginal rate (dual variable).
  double kkt_residual = 0.0;  ///< max over active streams of |marginal - lambda|.
  int iterations = 0;
};

inline constexpr int kMaxBisectionSteps = 200;

/// g * d/dx approx_pam(m, x) at x = p g. Throws DomainError if p < 0 or g <= 0.
double marginal_rate(int m, double gain, double power);

/// Power at which marginal_rate(m, gain, .) equals lambda, or 0 when the
/// stream's marginal at zero power does not exceed lambda. Closed-form root
/// of (1 + x)(m^2 + x) = gain (log2 e / 2)(m^2 - 1) / lambda.
double stream_power_at_level(int m, double gain, double lambda);

/// Dual bisection on lambda. Throws DomainError on malformed problems and
/// ConvergenceError if the power balance is not met within kMaxBisectionSteps.
AllocationSolution allocate(const AllocationProblem& problem);

/// Objective value for an arbitrary power vector (same length as the problem).
double sum_rate(const AllocationProblem& problem, const std::vector<double>& powers);

}  // namespace airate
