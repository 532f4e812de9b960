#pragma once

#include <cstddef>
#include <optional>
#include <utility>

namespace qvirial {

struct BathSpec;

/// Parameters of a damped harmonic oscillator in contact with a heat bath.
///
/// hbar and kB are ordinary fields so that the classical limit (hbar = 0) and
/// natural-unit sweeps go through the same code path. The defaults describe a
/// unit oscillator in natural units (m = hbar = kB = 1).
struct OscillatorParams {
  double m = 1.0;
  double omega0 = 1.0;
  double gamma = 0.0;  ///< damping rate mu/m
  double temperature = 1.0;
  double hbar = 1.0;
  double kB = 1.0;

  double beta() const { return 1.0 / (kB * temperature); }
  double kT() const { return kB * temperature; }
  /// Friction coefficient mu = m * gamma.
  double mu() const { return m * gamma; }

  /// Throws Error{InvalidParameter} unless m, omega0, T, kB > 0 and gamma, hbar >= 0.
  void validate() const;
};

/// Figure-space coordinates: x = hbar*beta*omega0, rho = gamma/omega0 and,
/// for a Drude bath, sigma = omega_cut/omega0.
struct DimensionlessParams {
  double x = 1.0;
  double rho = 0.0;
  std::optional<double> sigma;

  void validate() const;
};

enum class DampingRegime { UnderDamped, CriticallyDamped, OverDamped };

const char* to_string(DampingRegime regime) noexcept;

inline constexpr double kDefaultCriticalTolerance = 1e-9;

/// CriticallyDamped iff |gamma/2 - omega0| <= tol * omega0.
DampingRegime classify_regime(const OscillatorParams& p, double tol = kDefaultCriticalTolerance);

DimensionlessParams to_dimensionless(const OscillatorParams& p, const BathSpec& bath);

/// Inverse of to_dimensionless for fixed omega0, hbar, kB and m. Requires x > 0
/// and hbar > 0 (the temperature is recovered from x).
std::pair<OscillatorParams, BathSpec> from_dimensionless(const DimensionlessParams& d,
                                                         double omega0 = 1.0, double hbar = 1.0,
                                                         double kB = 1.0, double m = 1.0);

/// Bosonic Matsubara frequencies nu_n = 2 pi n / (hbar beta), 1 <= n <= n_max.
class MatsubaraGrid {
 public:
  MatsubaraGrid(double beta_hbar, std::size_t n_max);

  double beta_hbar() const { return beta_hbar_; }
  std::size_t n_max() const { return n_max_; }
  double nu(std::size_t n) const;

 private:
  double beta_hbar_;
  std::size_t n_max_;
};

}  // namespace qvirial
