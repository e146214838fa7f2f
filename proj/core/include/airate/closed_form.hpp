#pragma once

#include "airate/constellation.hpp"
#include "airate/rate.hpp"
#include "airate/snr.hpp"

namespace airate {

/// Real AWGN capacity 0.5 log2(1 + snr), bits/symbol/dimension.
RateResult capacity_awgn(Snr snr);

/// Sphere-packing estimate of the M-PAM rate: 0.5 log2((1 + snr) / (1 + snr / m^2)).
RateResult approx_pam(int m, Snr snr);

/// Square M-QAM estimate log2((1 + snr) / (1 + snr / m)) per symbol. The
/// returned value is per dimension (half of that); per_symbol() gives the full rate.
RateResult approx_qam(int m, Snr snr);

/// Laplace-method estimate of the 2-PAM rate, 1 - log2(1 + exp(-snr)).
RateResult approx_asymptotic_bpsk(Snr snr);

/// 4-QAM counterpart: per_symbol() is exactly twice approx_asymptotic_bpsk.
RateResult approx_asymptotic_qpsk(Snr snr);

/// min(capacity, log2(m) / dimension) per dimension.
RateResult rate_upper_bound(int m, int dimension, Snr snr);

/// d/d(snr) of approx_pam, with respect to linear SNR. Always positive.
double approx_pam_derivative(int m, Snr snr);

/// d^2/d(snr)^2 of approx_pam. Always negative.
double approx_pam_second_derivative(int m, Snr snr);

/// First-order low-SNR expansion (1 - 1/m^2) (log2 e / 2) snr.
RateResult low_snr_approx_pam(int m, Snr snr);

struct MminResult {
  double exact_value = 0.0;  ///< Formula value, generally not an integer.
  long long rounded_pow2 = 0;  ///< Smallest admissible power of two >= exact_value.
  /// 2 sqrt(1 + snr) for PAM; NaN for QAM, where no such bound is given.
  double upper_bound = 0.0;
};

/// Smallest cardinality whose constrained rate closely approaches capacity:
/// 2 max(1, sqrt(snr)) for PAM, 4 max(1, snr) for QAM. QAM rounding uses even
/// powers of two so sqrt(M) stays an integer.
MminResult mmin(Snr snr, Modulation kind);

}  // namespace airate
