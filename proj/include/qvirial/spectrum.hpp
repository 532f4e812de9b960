#pragma once

#include <cstddef>
#include <vector>

#include "qvirial/params.hpp"

namespace qvirial {

/// Two-sided power spectral density on the non-negative frequency bins,
/// normalised so that (1/2pi) int_{-inf}^{inf} S(w) dw equals the mean square.
struct PowerSpectrum {
  std::vector<double> omega;
  std::vector<double> power;
  double d_omega = 0.0;
  std::size_t n_segments = 0;
};

/// Welch estimate: Hann-windowed segments with 50% overlap, averaged periodograms.
/// Requires at least 2^14 samples.
PowerSpectrum estimate_spectrum(const std::vector<double>& samples, double dt, std::size_t segment_length = 4096);

/// (1/2pi) * sum over all two-sided bins of S dw.
double spectrum_mean_square(const PowerSpectrum& s);

/// Gamma / (m^2 (omega0^2 - w^2)^2 + m^2 gamma^2 w^2).
double analytic_position_spectrum(const OscillatorParams& p, double Gamma, double omega);

/// Maximum of the analytic spectrum, sqrt(omega0^2 - gamma^2/2) (0 when overdamped enough).
double damped_resonance(const OscillatorParams& p);

}  // namespace qvirial
