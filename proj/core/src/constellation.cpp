#include "airate/constellation.hpp"

#include <cmath>
#include <string>

#include "airate/errors.hpp"

namespace airate {

namespace {

std::vector<double> pam_levels(int m) {
  const double md = static_cast<double>(m);
  const double scale = std::sqrt(3.0 / (md * md - 1.0));
  std::vector<double> levels(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    levels[static_cast<std::size_t>(k - 1)] = static_cast<double>(2 * k - 1 - m) * scale;
  }
  return levels;
}

}  // namespace

int exact_sqrt(int m) noexcept {
  if (m < 0) return 0;
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
  return r * r == m ? r : 0;
}

Constellation make_pam(int m) {
  if (m < 2 || m > kMaxCardinality) {
    throw CardinalityError("PAM cardinality must lie in [2, 2^20], got " + std::to_string(m));
  }
  return Constellation(Modulation::kPam, m, pam_levels(m));
}

Constellation make_qam(int m) {
  const int side = exact_sqrt(m);
  if (side < 2 || m > kMaxCardinality) {
    throw CardinalityError("QAM cardinality must be a perfect square >= 4, got " +
                           std::to_string(m));
  }
  return Constellation(Modulation::kQam, m, pam_levels(side));
}

Constellation make_constellation(Modulation kind, int m) {
  return kind == Modulation::kPam ? make_pam(m) : make_qam(m);
}

double Constellation::entropy() const noexcept {
  return std::log2(static_cast<double>(m_)) / dimension();
}

std::vector<double> Constellation::level_differences() const {
  const std::size_t n = levels_.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = levels_[i] - levels_[j];
  }
  return d;
}

}  // namespace airate
