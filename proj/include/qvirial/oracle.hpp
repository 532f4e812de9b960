#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qvirial/bathspec.hpp"
#include "qvirial/params.hpp"
#include "qvirial/quadrature.hpp"

namespace qvirial {

inline constexpr double kOracleDefaultTol = 1e-9;
inline constexpr double kOracleCutoffFactor = 1e4;

/// Largest frequency scale of the problem: max(omega0, gamma, omega_cut).
double natural_frequency_scale(const OscillatorParams& p, const BathSpec& bath);

/// kOracleCutoffFactor * natural_frequency_scale.
double default_cutoff(const OscillatorParams& p, const BathSpec& bath);

/// Breakpoints for integrands peaked at the damped resonance: omega0,
/// omega0 +- 3 gamma, omega_cut and decades up to the cutoff.
std::vector<double> resonance_breakpoints(const OscillatorParams& p, const BathSpec& bath, double cutoff);

/// I1 = (hbar/2pi) int_{-cutoff}^{cutoff} w Re[mu~(w)] alpha(w) coth(hbar w/2kT) dw.
/// The imaginary part (odd integrand) must cancel between the two half-lines,
/// otherwise ToleranceNotMet. A cutoff of +infinity is accepted for Drude.
QuadratureResult i1_integral(const OscillatorParams& p, const BathSpec& bath, double cutoff,
                             double tol = kOracleDefaultTol);

/// I2 = (i hbar/2pi) int w Im[alpha(w)] coth(hbar w/2kT) mu~(-w) dw, real part;
/// the imaginary residual is parity-checked as for I1.
QuadratureResult i2_integral(const OscillatorParams& p, const BathSpec& bath, double cutoff,
                             double tol = kOracleDefaultTol);

/// (hbar omega0/4) coth(hbar omega0/2kT).
double mean_energy_weak_coupling(const OscillatorParams& p);

/// <V> = m omega0^2 <x^2>/2 with <x^2> = (1/2pi) int C~xx(w) dw.
QuadratureResult position_variance(const OscillatorParams& p, const BathSpec& bath, double cutoff,
                                   double tol = kOracleDefaultTol);

/// <K> = (m/2) (1/2pi) int w^2 C~xx(w) dw. Finite only with a Drude cutoff
/// or hbar = 0; otherwise log-divergent in the cutoff.
QuadratureResult mean_kinetic_energy(const OscillatorParams& p, const BathSpec& bath, double cutoff,
                                     double tol = kOracleDefaultTol);

struct CutoffScan {
  std::vector<double> cutoffs;
  std::vector<double> values;
  std::vector<double> slopes;  ///< (value(2L) - value(L)) / ln 2, one per doubling
  double mean_slope = 0.0;
  double max_rel_change = 0.0;  ///< max |value(2L) - value(L)| / |value(2L)|
};

/// Evaluates integral(L) at L = cutoff * 2^k, k = 0..n_doublings.
CutoffScan cutoff_scan(const std::function<QuadratureResult(double)>& integral, double cutoff,
                       std::size_t n_doublings = 3);

}  // namespace qvirial
