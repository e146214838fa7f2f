#pragma once

#include <vector>

namespace airate {

/// Nodes and weights for  integral exp(-t^2) f(t) dt ~= sum_k w_k f(t_k).
/// Nodes are sorted ascending; weights sum to sqrt(pi). log_weights holds
/// log(w_k) computed directly, so it stays finite where w_k underflows.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;
};

inline constexpr int kMaxGaussHermiteNodes = 512;

/// Builds an n-point rule: Golub-Welsch eigenvalues of the Jacobi matrix as
/// starting points, then Newton polishing on the orthonormal Hermite
/// recurrence. Throws DomainError for n outside [1, kMaxGaussHermiteNodes]
/// and NumericalError if any node or weight comes out non-finite.
GaussHermiteRule gauss_hermite_rule(int n);

/// Same rule, built once per n and shared. Safe to call concurrently.
const GaussHermiteRule& cached_gauss_hermite_rule(int n);

}  // namespace airate
