#pragma once

#include <cstdint>

#include "airate/constellation.hpp"
#include "airate/rate.hpp"
#include "airate/snr.hpp"

namespace airate {

struct QuadratureSpec {
  int nodes = 64;  ///< Gauss-Hermite abscissae, in [8, 512].
};

/// Monte-Carlo configuration. Sample k draws its symbol index and Gaussian
/// noise from SplitMix64 outputs at counters 3k, 3k+1 and 3k+2 after `seed`,
/// so a (seed, samples) pair always yields the same estimate.
struct McSpec {
  std::int64_t samples = 1'000'000;  ///< At least 10^4.
  std::uint64_t seed = 0x5EED;
};

inline constexpr int kMinQuadratureNodes = 8;
inline constexpr double kQuadratureReach = 7.5;
inline constexpr std::int64_t kMinMcSamples = 10'000;

/// Mutual information of equiprobable M-PAM over real AWGN, bits/symbol.
///
/// The Gaussian expectation over the noise is evaluated with Gauss-Hermite
/// quadrature and each inner sum over constellation points with log-sum-exp.
/// The abscissae are contracted so the outermost one lands at
/// kQuadratureReach noise standard deviations (weights corrected for the
/// change of variable); at high SNR the integrand bends on a scale finer than
/// the spacing of the unscaled rule. The result is clamped to [0, log2 M].
RateResult mi_pam_quadrature(const Constellation& pam, Snr snr, QuadratureSpec spec = {});

/// Sampling estimate of the same quantity, with the standard error of the mean.
RateResult mi_pam_montecarlo(const Constellation& pam, Snr snr, McSpec spec = {});

/// Square M-QAM as two independent sqrt(M)-PAM axes. value is per dimension
/// (equal to the sqrt(M)-PAM rate); per_symbol() gives twice that.
RateResult mi_qam(const Constellation& qam, Snr snr, QuadratureSpec spec = {});
RateResult mi_qam_montecarlo(const Constellation& qam, Snr snr, McSpec spec = {});

/// Dispatches on the constellation kind.
RateResult exact_mi_quadrature(const Constellation& c, Snr snr, QuadratureSpec spec = {});
RateResult exact_mi_montecarlo(const Constellation& c, Snr snr, McSpec spec = {});

}  // namespace airate
