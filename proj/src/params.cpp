#include "qvirial/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qvirial/bathspec.hpp"
#include "qvirial/error.hpp"

namespace qvirial {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidParameter, what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void OscillatorParams::validate() const {
  require(positive(m), "m must be > 0");
  require(positive(omega0), "omega0 must be > 0");
  require(non_negative(gamma), "gamma must be >= 0");
  require(positive(temperature), "temperature must be > 0");
  require(non_negative(hbar), "hbar must be >= 0");
  require(positive(kB), "kB must be > 0");
  const double b = beta();
  require(std::isfinite(b) && b > 0.0, "beta must be finite and positive");
}

void DimensionlessParams::validate() const {
  require(non_negative(x), "x must be >= 0");
  require(non_negative(rho), "rho must be >= 0");
  if (sigma) require(positive(*sigma), "sigma must be > 0");
}

const char* to_string(DampingRegime regime) noexcept {
  switch (regime) {
    case DampingRegime::UnderDamped: return "UnderDamped";
    case DampingRegime::CriticallyDamped: return "CriticallyDamped";
    case DampingRegime::OverDamped: return "OverDamped";
  }
  return "Unknown";
}

DampingRegime classify_regime(const OscillatorParams& p, double tol) {
  const double half = 0.5 * p.gamma;
  if (std::abs(half - p.omega0) <= tol * p.omega0) return DampingRegime::CriticallyDamped;
  return half < p.omega0 ? DampingRegime::UnderDamped : DampingRegime::OverDamped;
}

DimensionlessParams to_dimensionless(const OscillatorParams& p, const BathSpec& bath) {
  DimensionlessParams d;
  d.x = p.hbar * p.beta() * p.omega0;
  d.rho = p.gamma / p.omega0;
  if (bath.is_drude()) d.sigma = bath.omega_cut() / p.omega0;
  return d;
}

std::pair<OscillatorParams, BathSpec> from_dimensionless(const DimensionlessParams& d, double omega0,
                                                         double hbar, double kB, double m) {
  d.validate();
  require(d.x > 0.0, "x must be > 0 to recover a temperature");
  require(positive(hbar), "hbar must be > 0 to recover a temperature");
  require(positive(omega0) && positive(kB) && positive(m), "omega0, kB and m must be > 0");

  OscillatorParams p;
  p.m = m;
  p.omega0 = omega0;
  p.gamma = d.rho * omega0;
  p.hbar = hbar;
  p.kB = kB;
  // x = hbar*omega0/(kB T)
  p.temperature = hbar * omega0 / (kB * d.x);
  BathSpec bath = d.sigma ? BathSpec::drude(p.gamma, *d.sigma * omega0) : BathSpec::ohmic(p.gamma);
  return {p, bath};
}

MatsubaraGrid::MatsubaraGrid(double beta_hbar, std::size_t n_max) : beta_hbar_(beta_hbar), n_max_(n_max) {
  require(std::isfinite(beta_hbar) && beta_hbar > 0.0, "hbar*beta must be > 0 (take classical limits analytically)");
  require(n_max >= 1, "n_max must be >= 1");
}

double MatsubaraGrid::nu(std::size_t n) const { return 2.0 * std::numbers::pi * static_cast<double>(n) / beta_hbar_; }

}  // namespace qvirial
