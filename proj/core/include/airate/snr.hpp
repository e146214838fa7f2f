#pragma once

#include <cmath>

#include "airate/errors.hpp"

namespace airate {

/// Signal-to-noise ratio, signal power over noise power. Always strictly positive.
///
/// Constellations are normalized to unit power per dimension, so the noise
/// variance per dimension seen by the integrators is 1 / linear().
class Snr {
 public:
  static Snr from_linear(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw DomainError("SNR must be finite and strictly positive");
    }
    return Snr(gamma, 10.0 * std::log10(gamma));
  }

  static Snr from_db(double db) {
    if (!std::isfinite(db)) throw DomainError("SNR in dB must be finite");
    return from_linear(std::pow(10.0, db / 10.0));
  }

  double linear() const noexcept { return linear_; }
  double db() const noexcept { return db_; }
  double noise_variance() const noexcept { return 1.0 / linear_; }

 private:
  Snr(double linear, double db) : linear_(linear), db_(db) {}

  double linear_;
  double db_;
};

}  // namespace airate
