#include "qvirial/circuit.hpp"

#include <cmath>
#include <numbers>

#include "qvirial/bathspec.hpp"
#include "qvirial/error.hpp"

namespace qvirial {

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureResult lcr_integral(const CircuitParams& c, double cutoff, double tol, bool convergent,
                              double (*numerator)(double w, double w0)) {
  c.validate();
  const OscillatorParams p = c.to_oscillator();
  const BathSpec bath = BathSpec::ohmic(p.gamma);
  if (!(cutoff > 10.0 * natural_frequency_scale(p, bath))) {
    throw Error(ErrorKind::InvalidParameter, "cutoff must exceed 10x the largest frequency scale");
  }
  if (!std::isfinite(cutoff) && !convergent) {
    throw Error(ErrorKind::InvalidParameter, "integral diverges for hbar > 0; give a finite cutoff");
  }
  const double g = p.gamma, w0 = p.omega0;
  // even integrand: twice the half-line
  auto f = [&](double w) {
    const double d = w * w - w0 * w0;
    return 2.0 * (g / kPi) * numerator(w, w0) / (d * d + g * g * w * w) * circuit_mode_energy(c, w);
  };
  QuadratureOptions opt;
  opt.abs_tol = tol * c.kT();
  opt.rel_tol = 1e-13;
  opt.max_intervals = 100000;
  opt.breakpoints = resonance_breakpoints(p, bath, cutoff);
  QuadratureResult r = std::isfinite(cutoff) ? integrate(f, 0.0, cutoff, opt)
                                             : integrate_to_infinity(f, 0.0, natural_frequency_scale(p, bath), opt);
  r.cutoff = cutoff;
  return r;
}

}  // namespace

void CircuitParams::validate() const {
  auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!pos(L) || !pos(C) || !pos(R)) throw Error(ErrorKind::InvalidParameter, "L, C and R must be > 0");
  if (!pos(temperature) || !pos(kB)) throw Error(ErrorKind::InvalidParameter, "T and kB must be > 0");
  if (!(std::isfinite(hbar) && hbar >= 0.0)) throw Error(ErrorKind::InvalidParameter, "hbar must be >= 0");
}

OscillatorParams CircuitParams::to_oscillator() const {
  OscillatorParams p;
  p.m = L;
  p.omega0 = omega0();
  p.gamma = gamma();
  p.temperature = temperature;
  p.hbar = hbar;
  p.kB = kB;
  return p;
}

double circuit_mode_energy(const CircuitParams& c, double omega) {
  return 0.5 * mode_energy(c.to_oscillator(), omega);
}

QuadratureResult mean_energy_inductor(const CircuitParams& c, double cutoff, double tol) {
  return lcr_integral(c, cutoff, tol, c.hbar == 0.0, [](double w, double) { return w * w; });
}

QuadratureResult mean_energy_capacitor(const CircuitParams& c, double cutoff, double tol) {
  return lcr_integral(c, cutoff, tol, true, [](double, double w0) { return w0 * w0; });
}

QuadratureResult energy_difference(const CircuitParams& c, double cutoff, double tol) {
  return lcr_integral(c, cutoff, tol, c.hbar == 0.0, [](double w, double w0) { return w * w - w0 * w0; });
}

double johnson_nyquist_spectrum(const CircuitParams& c, double omega, NoiseForm form) {
  if (!(omega >= 0.0)) throw Error(ErrorKind::InvalidParameter, "omega must be >= 0");
  const double kT = c.kT();
  const double y = c.hbar * omega / kT;
  if (form == NoiseForm::ZeroPoint) return (2.0 / kPi) * c.R * kT * z_coth_z(0.5 * y);
  // y / (e^y - 1) -> 1 as y -> 0
  const double planck = y == 0.0 ? 1.0 : y / std::expm1(y);
  return (2.0 / kPi) * c.R * kT * planck;
}

SeriesResult circuit_diff_series(const CircuitParams& c, std::size_t n_max) {
  c.validate();
  return circuit_diff_series(c.to_oscillator(), n_max);
}

}  // namespace qvirial
