#include "qvirial/bathspec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qvirial/error.hpp"
#include "qvirial/quadrature.hpp"

namespace qvirial {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double BathSpec::gamma() const {
  return std::visit([](const auto& b) { return b.gamma; }, kind);
}

double BathSpec::omega_cut() const {
  return std::visit(overloaded{[](const Ohmic&) { return kInf; }, [](const Drude& d) { return d.omega_cut; }}, kind);
}

void BathSpec::validate() const {
  const double g = gamma();
  if (!(std::isfinite(g) && g >= 0.0)) throw Error(ErrorKind::InvalidParameter, "bath gamma must be >= 0");
  if (is_drude()) {
    const double wc = omega_cut();
    if (!(std::isfinite(wc) && wc > 0.0)) throw Error(ErrorKind::InvalidParameter, "omega_cut must be > 0");
  }
}

void check_consistent(const OscillatorParams& p, const BathSpec& bath) {
  p.validate();
  bath.validate();
  const double g = bath.gamma();
  if (std::abs(g - p.gamma) > 1e-12 * std::max({1.0, std::abs(g), std::abs(p.gamma)})) {
    throw Error(ErrorKind::InvalidParameter, "oscillator and bath disagree on gamma");
  }
}

double z_coth_z(double z) {
  if (std::abs(z) < kCothSeriesThreshold) return 1.0 + z * z / 3.0;
  return z / std::tanh(z);
}

double thermal_coth(const OscillatorParams& p, double omega) {
  const double y = p.hbar * omega / (2.0 * p.kT());
  if (y == 0.0) return omega < 0.0 ? -kInf : kInf;
  if (std::abs(y) < kCothSeriesThreshold) return 1.0 / y + y / 3.0;
  return 1.0 / std::tanh(y);
}

double mode_energy(const OscillatorParams& p, double omega) {
  return p.kT() * z_coth_z(p.hbar * omega / (2.0 * p.kT()));
}

double spectral_density(const BathSpec& bath, double m, double omega) {
  return std::visit(overloaded{[&](const Ohmic& b) { return m * b.gamma * omega; },
                               [&](const Drude& b) {
                                 const double r = omega / b.omega_cut;
                                 return m * b.gamma * omega / (1.0 + r * r);
                               }},
                    bath.kind);
}

std::complex<double> mu_tilde(const BathSpec& bath, double m, double omega) {
  return std::visit(overloaded{[&](const Ohmic& b) { return std::complex<double>(m * b.gamma, 0.0); },
                               [&](const Drude& b) {
                                 return m * b.gamma / std::complex<double>(1.0, -omega / b.omega_cut);
                               }},
                    bath.kind);
}

double dissipation_kernel(const BathSpec& bath, double m, double t) {
  if (!bath.is_drude()) {
    throw Error(ErrorKind::InvalidParameter, "the Ohmic kernel is a delta function");
  }
  if (t < 0.0) return 0.0;
  const double wc = bath.omega_cut();
  const double scale = m * bath.gamma() * wc;
  // J(w)/w = m gamma / (1 + (w/wc)^2)
  auto f = [&](double w) {
    const double r = w / wc;
    return (2.0 / kPi) * m * bath.gamma() / (1.0 + r * r) * std::cos(w * t);
  };
  QuadratureOptions opt;
  opt.abs_tol = 1e-13 * std::max(scale, std::numeric_limits<double>::min());
  if (t * wc < 1e-12) return integrate_to_infinity(f, 0.0, wc, opt).value;
  return integrate_oscillatory_tail(f, 0.0, t, opt, 4000).value;
}

std::complex<double> susceptibility(const OscillatorParams& p, const BathSpec& bath, double omega, double tol) {
  if (bath.gamma() == 0.0 && std::abs(p.omega0 * p.omega0 - omega * omega) <= tol * p.omega0 * p.omega0) {
    throw Error(ErrorKind::PoleOnRealAxis, "undamped oscillator evaluated at its resonance");
  }
  const std::complex<double> mu = mu_tilde(bath, p.m, omega);
  const std::complex<double> den = p.m * (p.omega0 * p.omega0 - omega * omega) - std::complex<double>(0.0, omega) * mu;
  return 1.0 / den;
}

double im_susceptibility_over_omega(const OscillatorParams& p, const BathSpec& bath, double omega) {
  const std::complex<double> mu = mu_tilde(bath, p.m, omega);
  // den = (m(w0^2 - w^2) + w Im mu) - i w Re mu,  Im alpha = w Re mu / |den|^2
  const double re = p.m * (p.omega0 * p.omega0 - omega * omega) + omega * mu.imag();
  const double im = omega * mu.real();
  return mu.real() / (re * re + im * im);
}

double fdt_position_spectrum(const OscillatorParams& p, const BathSpec& bath, double omega) {
  // hbar w coth(hbar w / 2kT) = 2 * mode_energy
  return 2.0 * mode_energy(p, omega) * im_susceptibility_over_omega(p, bath, omega);
}

double weak_coupling_correlator(const OscillatorParams& p) {
  return 2.0 * p.mu() * mode_energy(p, p.omega0);
}

namespace {

QuadratureOptions spectral_options(const OscillatorParams& p, const BathSpec& bath, double tol, double cutoff,
                                   double tau) {
  QuadratureOptions opt;
  const double wscale = std::max(p.omega0, bath.is_drude() ? bath.omega_cut() : p.omega0);
  opt.abs_tol = tol * std::max(p.mu() * (p.kT() + p.hbar * wscale) * wscale, std::numeric_limits<double>::min());
  opt.max_intervals = 200000;
  if (tau != 0.0 && std::isfinite(cutoff)) {
    const double half = kPi / std::abs(tau);
    const double n = std::min(cutoff / half, 20000.0);
    for (int k = 1; k < static_cast<int>(n); ++k) opt.breakpoints.push_back(k * cutoff / n);
  }
  return opt;
}

}  // namespace

NoiseCorrelatorResult noise_symmetric_correlator(const OscillatorParams& p, const BathSpec& bath, double tau,
                                                 double cutoff, double tol) {
  check_consistent(p, bath);
  if (!(p.gamma > 0.0)) throw Error(ErrorKind::InvalidParameter, "noise correlator needs gamma > 0");
  if (!(cutoff > 0.0)) throw Error(ErrorKind::InvalidParameter, "cutoff must be > 0");

  NoiseCorrelatorResult out;
  out.cutoff = cutoff;
  out.divergent_at_equal_times = tau == 0.0 && (!bath.is_drude() || p.hbar > 0.0);
  if (!std::isfinite(cutoff)) {
    const bool converges = bath.is_drude() && (tau != 0.0 || p.hbar == 0.0);
    if (!converges) throw Error(ErrorKind::InvalidParameter, "correlator diverges without a finite cutoff");
  }

  auto f = [&](double w) {
    return (2.0 / kPi) * mode_energy(p, w) * mu_tilde(bath, p.m, w).real() * std::cos(w * tau);
  };
  QuadratureOptions opt = spectral_options(p, bath, tol, cutoff, tau);
  QuadratureResult r;
  if (std::isfinite(cutoff)) {
    r = integrate(f, 0.0, cutoff, opt);
  } else if (tau == 0.0) {
    r = integrate_to_infinity(f, 0.0, bath.omega_cut(), opt);
  } else {
    r = integrate_oscillatory_tail(f, 0.0, std::abs(tau), opt, 20000);
  }
  out.value = r.value;
  out.err = r.err;
  return out;
}

double noise_commutator(const OscillatorParams& p, const BathSpec& bath, double tau, double cutoff, double tol) {
  check_consistent(p, bath);
  if (!(cutoff > 0.0)) throw Error(ErrorKind::InvalidParameter, "cutoff must be > 0");
  if (tau == 0.0 || p.hbar == 0.0) return 0.0;
  if (!std::isfinite(cutoff) && !bath.is_drude()) {
    throw Error(ErrorKind::InvalidParameter, "Ohmic commutator needs a finite cutoff");
  }
  const double a = std::abs(tau);
  auto f = [&](double w) {
    return (2.0 / kPi) * p.hbar * w * mu_tilde(bath, p.m, w).real() * std::sin(w * a);
  };
  QuadratureOptions opt = spectral_options(p, bath, tol, cutoff, a);
  const double v = std::isfinite(cutoff) ? integrate(f, 0.0, cutoff, opt).value
                                         : integrate_oscillatory_tail(f, 0.0, a, opt, 20000).value;
  return tau > 0.0 ? v : -v;
}

}  // namespace qvirial
