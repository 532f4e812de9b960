#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qvirial/bathspec.hpp"
#include "qvirial/convergence.hpp"
#include "qvirial/params.hpp"

namespace qvirial {

inline constexpr std::size_t kDefaultTerms = 500;
inline constexpr double kPoleCollisionTol = 1e-12;
/// Imaginary parts of complex-evaluated series must stay below this, relative.
inline constexpr double kImagResidualTol = 1e-10;

struct OhmicRoots {
  std::complex<double> omega_plus;
  std::complex<double> omega_minus;
  double Omega_sq = 0.0;  ///< omega0^2 - gamma^2/4
};

struct DrudeRoots {
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  std::complex<double> lambda3;
};

OhmicRoots ohmic_roots(const OscillatorParams& p);
DrudeRoots drude_roots(const OscillatorParams& p, const BathSpec& bath);

// --- I1, Ohmic --------------------------------------------------------------

/// n-th term (n >= 1) of the three-sum Ohmic I1 series, all sums merged.
std::vector<double> i1_ohmic_terms(const OscillatorParams& p, std::size_t n_max = kDefaultTerms);

/// Ohmic I1 from the closed-form contour result. Diverges logarithmically.
/// Throws CriticalDampingSingularity at critical damping and NonRealResult if
/// the complex evaluation leaves an imaginary part (under-damped regime).
SeriesResult i1_ohmic(const OscillatorParams& p, std::size_t n_max = kDefaultTerms);

/// Ohmic I1 from the residues at the Matsubara poles (contour closed where
/// alpha is analytic): -(2 gamma/beta) sum nu/(nu^2 + gamma nu + omega0^2).
/// Valid in every damping regime.
SeriesResult i1_ohmic_matsubara_poles(const OscillatorParams& p, std::size_t n_max = kDefaultTerms);

// --- I1, Drude --------------------------------------------------------------

/// Terms n = 1..n_max of the Drude I1 series, without the constant part.
std::vector<double> i1_drude_terms(const OscillatorParams& p, const BathSpec& bath,
                                   std::size_t n_max = kDefaultTerms);

/// The three n-independent terms times the prefactor.
double i1_drude_constant(const OscillatorParams& p, const BathSpec& bath);

/// Drude I1 closed form with roots lambda1 = omega_cut - gamma and
/// lambda2,3 = gamma/2 +- sqrt(gamma^2/4 - omega0^2). Partial sums include the
/// constant part. Throws CriticalDampingSingularity, PoleCollision, NonRealResult.
SeriesResult i1_drude(const OscillatorParams& p, const BathSpec& bath, std::size_t n_max = kDefaultTerms);

/// beta*I1 for a Drude bath written in (x, rho, sigma).
SeriesResult i1_drude_dimensionless(const DimensionlessParams& d, std::size_t n_max = kDefaultTerms);

/// Drude I1 from the residues at the Matsubara poles, exact for the Drude
/// kernel (no approximate roots). Truncation error is O(1/n_max).
SeriesResult i1_drude_matsubara_poles(const OscillatorParams& p, const BathSpec& bath,
                                      std::size_t n_max = kDefaultTerms);

// --- I2, Ohmic --------------------------------------------------------------

/// nu^2 / ((omega0^2 + nu^2 - gamma^2/2)^2 + (Omega gamma)^2), shared by the I2
/// series and the circuit series.
double i2_first_piece_term(const OscillatorParams& p, double nu);

/// nu^2 / ((omega0^2 + nu^2)^2 - (gamma nu)^2). Throws PoleCollision.
double i2_second_piece_term(const OscillatorParams& p, double nu);

SeriesResult i2_ohmic(const OscillatorParams& p, std::size_t n_max = kDefaultTerms);

/// beta*I2 in (x, rho).
SeriesResult i2_dimensionless(const DimensionlessParams& d, std::size_t n_max = kDefaultTerms);

// --- circuit ---------------------------------------------------------------

/// <E_L> - <E_C> as the two-sum series, gamma = R/L, omega0 = 1/sqrt(LC).
SeriesResult circuit_diff_series(const OscillatorParams& p, std::size_t n_max = kDefaultTerms);

/// <E_L> - <E_C> from the residues at the Matsubara poles:
/// (gamma/beta) sum nu/(nu^2 + gamma nu + omega0^2).
SeriesResult circuit_diff_matsubara_poles(const OscillatorParams& p, std::size_t n_max = kDefaultTerms);

}  // namespace qvirial
