#pragma once

#include <complex>
#include <limits>
#include <variant>

#include "qvirial/params.hpp"

namespace qvirial {

struct Ohmic {
  double gamma = 0.0;
};

/// Single-relaxation (Lorentzian cut-off) bath.
struct Drude {
  double gamma = 0.0;
  double omega_cut = 1.0;
};

/// Dissipation mechanism of the heat bath.
struct BathSpec {
  std::variant<Ohmic, Drude> kind;

  static BathSpec ohmic(double gamma) { return BathSpec{Ohmic{gamma}}; }
  static BathSpec drude(double gamma, double omega_cut) { return BathSpec{Drude{gamma, omega_cut}}; }

  double gamma() const;
  bool is_drude() const { return std::holds_alternative<Drude>(kind); }
  /// omega_cut for Drude, +infinity for Ohmic.
  double omega_cut() const;

  void validate() const;
};

/// Throws InvalidParameter unless p and bath are valid and carry the same gamma.
void check_consistent(const OscillatorParams& p, const BathSpec& bath);

// --- thermal factors -------------------------------------------------------

/// Below this |z| the coth factors switch to their Laurent expansion.
inline constexpr double kCothSeriesThreshold = 1e-4;

/// z coth z, finite and even, equal to 1 at z = 0.
double z_coth_z(double z);

/// coth(hbar*omega / 2kT). Diverges at omega = 0 (returns +-inf there).
double thermal_coth(const OscillatorParams& p, double omega);

/// (hbar*omega/2) coth(hbar*omega/2kT), the mean energy of a bath mode of
/// frequency omega including zero-point motion. Equals kT at omega = 0 and
/// for hbar = 0.
double mode_energy(const OscillatorParams& p, double omega);

// --- spectral functions ----------------------------------------------------

/// J(omega) for omega >= 0: m*gamma*omega for Ohmic,
/// m*gamma*omega / (1 + (omega/omega_cut)^2) for Drude.
double spectral_density(const BathSpec& bath, double m, double omega);

/// Fourier transform of the dissipation kernel, int_0^inf mu(t) e^{i omega t} dt.
/// Ohmic: m*gamma. Drude: m*gamma / (1 - i omega/omega_cut).
std::complex<double> mu_tilde(const BathSpec& bath, double m, double omega);

/// Dissipation kernel mu(t) = (2/pi) int_0^inf J(w)/w cos(w t) dw for t > 0.
/// Drude only (the Ohmic kernel is a delta function); throws for Ohmic.
double dissipation_kernel(const BathSpec& bath, double m, double t);

/// alpha(omega) = 1 / (m(omega0^2 - omega^2) - i omega mu~(omega)).
/// Throws PoleOnRealAxis when gamma = 0 and |omega| = omega0 within tol.
std::complex<double> susceptibility(const OscillatorParams& p, const BathSpec& bath, double omega,
                                    double tol = 1e-12);

/// Im alpha(omega) / omega, finite at omega = 0.
double im_susceptibility_over_omega(const OscillatorParams& p, const BathSpec& bath, double omega);

/// FDT position spectrum C~xx(omega) = hbar Im alpha(omega) coth(hbar omega / 2kT),
/// with the finite omega -> 0 limit 2kT * Re mu~(0) / (m omega0^2)^2.
double fdt_position_spectrum(const OscillatorParams& p, const BathSpec& bath, double omega);

/// Quantum diffusion constant D = m gamma hbar omega0 coth(hbar omega0 / 2kT) of the
/// weak-coupling (Markovian) noise approximation; tends to 2 m gamma kT as hbar -> 0.
double weak_coupling_correlator(const OscillatorParams& p);

struct NoiseCorrelatorResult {
  double value = 0.0;  ///< symmetrised correlator <{F(t),F(t')}>/2
  double err = 0.0;
  double cutoff = 0.0;
  /// The equal-time value grows without bound with the cutoff; value is
  /// only meaningful together with cutoff.
  bool divergent_at_equal_times = false;
};

/// <{F(t), F(t')}>/2 at lag tau = t - t', from
/// (1/pi) int_0^cutoff hbar w Re mu~(w) coth(hbar w / 2kT) cos(w tau) dw.
/// A cutoff of +infinity is accepted when the integral converges (Drude, tau != 0).
NoiseCorrelatorResult noise_symmetric_correlator(const OscillatorParams& p, const BathSpec& bath,
                                                 double tau, double cutoff, double tol = 1e-10);

/// <[F(t), F(t')]> / i at lag tau, from (2/pi) int_0^cutoff hbar w Re mu~(w) sin(w tau) dw.
/// Odd in tau by construction.
double noise_commutator(const OscillatorParams& p, const BathSpec& bath, double tau, double cutoff,
                        double tol = 1e-10);

}  // namespace qvirial
