#include "qvirial/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qvirial/error.hpp"

namespace qvirial {

namespace {

constexpr double kPi = std::numbers::pi;

void require_oracle_params(const OscillatorParams& p, const BathSpec& bath, double cutoff) {
  check_consistent(p, bath);
  if (!(p.gamma > 0.0)) throw Error(ErrorKind::InvalidParameter, "oracle integrals need gamma > 0");
  const double lo = 10.0 * natural_frequency_scale(p, bath);
  if (!(cutoff > lo)) {
    throw Error(ErrorKind::InvalidParameter, "cutoff must exceed 10x the largest frequency scale");
  }
}

QuadratureOptions options_for(const OscillatorParams& p, const BathSpec& bath, double cutoff, double tol,
                              double energy_scale) {
  QuadratureOptions opt;
  opt.abs_tol = tol * energy_scale;
  opt.rel_tol = 1e-13;
  opt.max_intervals = 100000;
  opt.breakpoints = resonance_breakpoints(p, bath, cutoff);
  return opt;
}

// Integral of an even-or-odd integrand over [0, cutoff]; cutoff may be infinite.
QuadratureResult half_line(const Integrand& f, const OscillatorParams& p, const BathSpec& bath, double cutoff,
                           const QuadratureOptions& opt) {
  if (std::isfinite(cutoff)) return integrate(f, 0.0, cutoff, opt);
  return integrate_to_infinity(f, 0.0, natural_frequency_scale(p, bath), opt);
}

// Integrates re(w) over [-cutoff, cutoff] as two half-lines and checks that
// im(w) cancels between them.
QuadratureResult symmetric_with_parity(const std::function<double(double)>& re,
                                       const std::function<double(double)>& im, const OscillatorParams& p,
                                       const BathSpec& bath, double cutoff, const QuadratureOptions& opt,
                                       const char* what) {
  const QuadratureResult rp = half_line(re, p, bath, cutoff, opt);
  const QuadratureResult rn = half_line([&](double w) { return re(-w); }, p, bath, cutoff, opt);
  const QuadratureResult ip = half_line(im, p, bath, cutoff, opt);
  const QuadratureResult in = half_line([&](double w) { return im(-w); }, p, bath, cutoff, opt);

  QuadratureResult out;
  out.value = rp.value + rn.value;
  out.err = rp.err + rn.err;
  out.n_evals = rp.n_evals + rn.n_evals + ip.n_evals + in.n_evals;
  out.cutoff = cutoff;
  const double residual = std::abs(ip.value + in.value);
  const double bound = std::max(10.0 * (ip.err + in.err), 1e-10 * std::max(std::abs(out.value), std::abs(ip.value)));
  if (residual > bound) {
    throw Error(ErrorKind::ToleranceNotMet,
                std::string(what) + ": imaginary part does not cancel, residual " + std::to_string(residual));
  }
  return out;
}

}  // namespace

double natural_frequency_scale(const OscillatorParams& p, const BathSpec& bath) {
  double s = std::max(p.omega0, p.gamma);
  if (bath.is_drude()) s = std::max(s, bath.omega_cut());
  return s;
}

double default_cutoff(const OscillatorParams& p, const BathSpec& bath) {
  return kOracleCutoffFactor * natural_frequency_scale(p, bath);
}

std::vector<double> resonance_breakpoints(const OscillatorParams& p, const BathSpec& bath, double cutoff) {
  std::vector<double> b{p.omega0, p.omega0 + 3.0 * p.gamma};
  if (p.omega0 - 3.0 * p.gamma > 0.0) b.push_back(p.omega0 - 3.0 * p.gamma);
  if (p.omega0 - p.gamma > 0.0) b.push_back(p.omega0 - p.gamma);
  b.push_back(p.omega0 + p.gamma);
  const double damped = p.omega0 * p.omega0 - 0.5 * p.gamma * p.gamma;
  if (damped > 0.0) b.push_back(std::sqrt(damped));
  if (bath.is_drude()) b.push_back(bath.omega_cut());
  if (p.hbar > 0.0) b.push_back(2.0 * kPi * p.kT() / p.hbar);
  const double top = std::isfinite(cutoff) ? cutoff : 1e6 * natural_frequency_scale(p, bath);
  for (double d = natural_frequency_scale(p, bath); d < top; d *= 10.0) b.push_back(d);
  b.erase(std::remove_if(b.begin(), b.end(), [&](double x) { return !(x > 0.0) || x >= top; }), b.end());
  std::sort(b.begin(), b.end());
  return b;
}

QuadratureResult i1_integral(const OscillatorParams& p, const BathSpec& bath, double cutoff, double tol) {
  require_oracle_params(p, bath, cutoff);
  if (!std::isfinite(cutoff) && !bath.is_drude()) {
    throw Error(ErrorKind::InvalidParameter, "the Ohmic I1 integral diverges; give a finite cutoff");
  }
  // (hbar/2pi) w coth = (1/pi) mode_energy
  auto re = [&](double w) {
    return mode_energy(p, w) / kPi * mu_tilde(bath, p.m, w).real() * susceptibility(p, bath, w).real();
  };
  auto im = [&](double w) {
    return mode_energy(p, w) / kPi * mu_tilde(bath, p.m, w).real() * susceptibility(p, bath, w).imag();
  };
  const auto opt = options_for(p, bath, cutoff, tol, p.kT());
  return symmetric_with_parity(re, im, p, bath, cutoff, opt, "i1_integral");
}

QuadratureResult i2_integral(const OscillatorParams& p, const BathSpec& bath, double cutoff, double tol) {
  if (p.gamma == 0.0) {
    // uncoupled: mu~ vanishes identically, even though alpha has a pole on the axis
    check_consistent(p, bath);
    QuadratureResult zero;
    zero.cutoff = cutoff;
    return zero;
  }
  require_oracle_params(p, bath, cutoff);
  // i * hbar w Im alpha coth * mu~(-w) / 2pi; real part uses -Im mu~(-w).
  auto re = [&](double w) {
    return mode_energy(p, w) / kPi * susceptibility(p, bath, w).imag() * -mu_tilde(bath, p.m, -w).imag();
  };
  auto im = [&](double w) {
    return mode_energy(p, w) / kPi * susceptibility(p, bath, w).imag() * mu_tilde(bath, p.m, -w).real();
  };
  const auto opt = options_for(p, bath, cutoff, tol, p.kT());
  return symmetric_with_parity(re, im, p, bath, cutoff, opt, "i2_integral");
}

double mean_energy_weak_coupling(const OscillatorParams& p) {
  p.validate();
  return 0.5 * mode_energy(p, p.omega0);
}

QuadratureResult position_variance(const OscillatorParams& p, const BathSpec& bath, double cutoff, double tol) {
  require_oracle_params(p, bath, cutoff);
  const double k = p.m * p.omega0 * p.omega0;
  // <V> = (k/2)(1/pi) int_0 C~xx, C~xx even
  auto f = [&](double w) { return 0.5 * k / kPi * fdt_position_spectrum(p, bath, w); };
  const auto opt = options_for(p, bath, cutoff, tol, p.kT());
  QuadratureResult r = half_line(f, p, bath, cutoff, opt);
  r.cutoff = cutoff;
  return r;
}

QuadratureResult mean_kinetic_energy(const OscillatorParams& p, const BathSpec& bath, double cutoff, double tol) {
  require_oracle_params(p, bath, cutoff);
  if (!std::isfinite(cutoff) && !bath.is_drude() && p.hbar > 0.0) {
    throw Error(ErrorKind::InvalidParameter, "<K> diverges for an Ohmic bath; give a finite cutoff");
  }
  auto f = [&](double w) { return 0.5 * p.m / kPi * w * w * fdt_position_spectrum(p, bath, w); };
  const auto opt = options_for(p, bath, cutoff, tol, p.kT());
  QuadratureResult r = half_line(f, p, bath, cutoff, opt);
  r.cutoff = cutoff;
  return r;
}

CutoffScan cutoff_scan(const std::function<QuadratureResult(double)>& integral, double cutoff,
                       std::size_t n_doublings) {
  CutoffScan s;
  double L = cutoff;
  for (std::size_t k = 0; k <= n_doublings; ++k, L *= 2.0) {
    s.cutoffs.push_back(L);
    s.values.push_back(integral(L).value);
  }
  double sum = 0.0;
  for (std::size_t k = 1; k < s.values.size(); ++k) {
    const double d = s.values[k] - s.values[k - 1];
    s.slopes.push_back(d / std::log(2.0));
    sum += s.slopes.back();
    const double denom = std::abs(s.values[k]);
    s.max_rel_change = std::max(s.max_rel_change, denom > 0.0 ? std::abs(d) / denom : std::abs(d));
  }
  if (!s.slopes.empty()) s.mean_slope = sum / static_cast<double>(s.slopes.size());
  return s;
}

}  // namespace qvirial
