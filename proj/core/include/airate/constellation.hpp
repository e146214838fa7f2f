#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace airate {

enum class Modulation { kPam, kQam };

/// Largest cardinality accepted by the constructors; bounds the M x M
/// difference matrix.
inline constexpr int kMaxCardinality = 1 << 20;

/// Equispaced, equiprobable M-PAM or square M-QAM constellation normalized to
/// unit average power per dimension.
///
/// For QAM only one axis is stored: the point set is the Cartesian product of
/// levels() with itself.
class Constellation {
 public:
  Modulation kind() const noexcept { return kind_; }
  int m() const noexcept { return m_; }
  int dimension() const noexcept { return kind_ == Modulation::kPam ? 1 : 2; }
  /// Per-axis amplitude levels, strictly increasing.
  const std::vector<double>& levels() const noexcept { return levels_; }

  /// log2(M) / dimension, the rate ceiling for equiprobable signalling.
  double entropy() const noexcept;

  /// Row-major matrix d[i * n + j] = a_i - a_j over the per-axis levels.
  std::vector<double> level_differences() const;

 private:
  friend Constellation make_pam(int m);
  friend Constellation make_qam(int m);

  Constellation(Modulation kind, int m, std::vector<double> levels)
      : kind_(kind), m_(m), levels_(std::move(levels)) {}

  Modulation kind_;
  int m_;
  std::vector<double> levels_;
};

/// Levels (2k - 1 - m) * sqrt(3 / (m^2 - 1)), k = 1..m.
Constellation make_pam(int m);

/// Square QAM; each axis is make_pam(sqrt(m)).
Constellation make_qam(int m);

Constellation make_constellation(Modulation kind, int m);

/// Integer square root of m if m is a perfect square, else 0.
int exact_sqrt(int m) noexcept;

}  // namespace airate
