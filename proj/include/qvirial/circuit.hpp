#pragma once

#include <cmath>
#include <cstddef>

#include "qvirial/convergence.hpp"
#include "qvirial/matsubara.hpp"
#include "qvirial/oracle.hpp"
#include "qvirial/params.hpp"
#include "qvirial/quadrature.hpp"

namespace qvirial {

/// Series LCR circuit driven by Johnson-Nyquist noise. The charge obeys the
/// oscillator equation with m = L, gamma = R/L, omega0 = 1/sqrt(LC).
struct CircuitParams {
  double L = 1.0;
  double C = 1.0;
  double R = 1.0;
  double temperature = 1.0;
  double hbar = 1.0;
  double kB = 1.0;

  double gamma() const { return R / L; }
  double omega0() const { return 1.0 / std::sqrt(L * C); }
  double kT() const { return kB * temperature; }

  void validate() const;
  OscillatorParams to_oscillator() const;
};

/// (hbar w/4) coth(hbar w/2kT), zero-point energy included; kT/2 for hbar = 0.
double circuit_mode_energy(const CircuitParams& c, double omega);

/// <E_L> = int (R w^2/pi L) / ((w^2 - w0^2)^2 + w^2 gamma^2) eps(w) dw over [-cutoff, cutoff].
/// Log-divergent in the cutoff for hbar > 0; an infinite cutoff is accepted for hbar = 0.
QuadratureResult mean_energy_inductor(const CircuitParams& c, double cutoff, double tol = kOracleDefaultTol);

/// <E_C>, as above with w^2 -> w0^2 in the numerator. Convergent; cutoff may be infinite.
QuadratureResult mean_energy_capacitor(const CircuitParams& c, double cutoff, double tol = kOracleDefaultTol);

/// <E_L> - <E_C> as a single integral.
QuadratureResult energy_difference(const CircuitParams& c, double cutoff, double tol = kOracleDefaultTol);

enum class NoiseForm {
  Planck,     ///< (2/pi) R hbar w / (exp(hbar w/kT) - 1)
  ZeroPoint,  ///< (2/pi) R (hbar w/2) coth(hbar w/2kT), Planck plus hbar w/2
};

/// Johnson-Nyquist voltage noise spectrum S_F(w), w >= 0. Finite limit 2 R kT/pi at w = 0.
double johnson_nyquist_spectrum(const CircuitParams& c, double omega, NoiseForm form = NoiseForm::Planck);

/// Series form of <E_L> - <E_C> for the circuit.
SeriesResult circuit_diff_series(const CircuitParams& c, std::size_t n_max = kDefaultTerms);

}  // namespace qvirial
