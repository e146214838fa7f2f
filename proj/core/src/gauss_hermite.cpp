#include "airate/gauss_hermite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "airate/errors.hpp"

namespace airate {

namespace {

constexpr int kNewtonSteps = 8;

struct HermiteEval {
  double value;       // orthonormal h_n(x)
  double derivative;  // h_n'(x)
};

// Orthonormal recurrence: h_{j+1} = x sqrt(2/(j+1)) h_j - sqrt(j/(j+1)) h_{j-1},
// with h_0 = pi^{-1/4}; then h_n' = sqrt(2n) h_{n-1}.
HermiteEval eval_hermite(int n, double x) {
  double p1 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  double p2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double p3 = p2;
    p2 = p1;
    const double jd = static_cast<double>(j);
    p1 = x * std::sqrt(2.0 / (jd + 1.0)) * p2 - std::sqrt(jd / (jd + 1.0)) * p3;
  }
  return {p1, std::sqrt(2.0 * n) * p2};
}

// Eigenvalues of the symmetric tridiagonal Jacobi matrix for exp(-t^2):
// zero diagonal, off-diagonal sqrt(k/2).
Eigen::VectorXd jacobi_eigenvalues(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Jacobi eigenvalue solve failed for n = " + std::to_string(n));
  }
  return solver.eigenvalues();
}

void require_node_count(int n) {
  if (n < 1 || n > kMaxGaussHermiteNodes) {
    throw DomainError("Gauss-Hermite node count must lie in [1, " +
                      std::to_string(kMaxGaussHermiteNodes) + "], got " + std::to_string(n));
  }
}

}  // namespace

GaussHermiteRule gauss_hermite_rule(int n) {
  require_node_count(n);
  const Eigen::VectorXd seeds = jacobi_eigenvalues(n);

  GaussHermiteRule rule;
  const auto size = static_cast<std::size_t>(n);
  rule.nodes.resize(size);
  rule.weights.resize(size);
  rule.log_weights.resize(size);

  // Polish the non-negative roots and mirror them.
  for (int i = n / 2; i < n; ++i) {
    double z = std::abs(seeds[i]);
    if (n % 2 == 1 && i == n / 2) z = 0.0;
    for (int step = 0; step < kNewtonSteps && z != 0.0; ++step) {
      const HermiteEval h = eval_hermite(n, z);
      const double dz = h.value / h.derivative;
      z -= dz;
      if (std::abs(dz) <= 1e-16 * std::abs(z)) break;
    }
    const double log_derivative = std::log(std::abs(eval_hermite(n, z).derivative));
    const double log_weight = std::numbers::ln2 - 2.0 * log_derivative;
    if (!std::isfinite(z) || !std::isfinite(log_weight)) {
      throw NumericalError("non-finite Gauss-Hermite node or weight for n = " +
                           std::to_string(n));
    }
    const auto hi = static_cast<std::size_t>(i);
    const auto lo = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[hi] = z;
    rule.nodes[lo] = -z;
    rule.log_weights[hi] = rule.log_weights[lo] = log_weight;
    rule.weights[hi] = rule.weights[lo] = std::exp(log_weight);
  }
  return rule;
}

const GaussHermiteRule& cached_gauss_hermite_rule(int n) {
  require_node_count(n);
  static std::array<std::once_flag, kMaxGaussHermiteNodes + 1> built;
  static std::array<GaussHermiteRule, kMaxGaussHermiteNodes + 1> rules;
  std::call_once(built[static_cast<std::size_t>(n)],
                 [n] { rules[static_cast<std::size_t>(n)] = gauss_hermite_rule(n); });
  return rules[static_cast<std::size_t>(n)];
}

}  // namespace airate
