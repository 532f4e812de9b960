#include "qvirial/matsubara.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qvirial/error.hpp"
#include "qvirial/summation.hpp"

namespace qvirial {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_series_params(const OscillatorParams& p) {
  p.validate();
  if (!(p.hbar > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "Matsubara series need hbar > 0; take classical limits analytically");
  }
}

void require_not_critical(const OscillatorParams& p) {
  if (classify_regime(p) == DampingRegime::CriticallyDamped) {
    throw Error(ErrorKind::CriticalDampingSingularity, "omega_+ - omega_- vanishes; use the quadrature oracle");
  }
}

void check_pole(cd root, double nu) {
  if (std::abs(root - nu) < kPoleCollisionTol * nu) {
    throw Error(ErrorKind::PoleCollision, "Matsubara frequency " + std::to_string(nu) + " hits a pole");
  }
}

void check_nonzero(cd den, double scale, const char* what) {
  if (std::abs(den) < kPoleCollisionTol * scale) throw Error(ErrorKind::PoleCollision, what);
}

double real_part(cd z, double scale) {
  if (std::abs(z.imag()) > kImagResidualTol * std::max(std::abs(z.real()), scale)) {
    throw Error(ErrorKind::NonRealResult,
                "imaginary residual " + std::to_string(z.imag()) + " against real part " + std::to_string(z.real()));
  }
  return z.real();
}

double abs_sum(const std::vector<double>& terms) {
  CompensatedSum s;
  for (double t : terms) s.add(std::abs(t));
  return s.value();
}

SeriesResult accumulate(double constant, const std::vector<double>& terms, double scale) {
  std::vector<double> partial;
  partial.reserve(terms.size());
  CompensatedSum s;
  s.add(constant);
  for (double t : terms) {
    s.add(t);
    partial.push_back(s.value());
  }
  return make_series_result(std::move(partial), scale);
}

}  // namespace

OhmicRoots ohmic_roots(const OscillatorParams& p) {
  const double w0sq = p.omega0 * p.omega0;
  const double g2 = 0.25 * p.gamma * p.gamma;
  const cd r = std::sqrt(cd(g2 - w0sq, 0.0));
  return {0.5 * p.gamma + r, 0.5 * p.gamma - r, w0sq - g2};
}

DrudeRoots drude_roots(const OscillatorParams& p, const BathSpec& bath) {
  const OhmicRoots o = ohmic_roots(p);
  return {cd(bath.omega_cut() - p.gamma, 0.0), o.omega_plus, o.omega_minus};
}

// --- I1 Ohmic ----------------------------------------------------------------

std::vector<double> i1_ohmic_terms(const OscillatorParams& p, std::size_t n_max) {
  require_series_params(p);
  if (!(p.gamma > 0.0)) throw Error(ErrorKind::InvalidParameter, "i1_ohmic needs gamma > 0");
  require_not_critical(p);
  const MatsubaraGrid grid(p.hbar * p.beta(), n_max);
  const OhmicRoots r = ohmic_roots(p);
  const cd wp = r.omega_plus, wm = r.omega_minus;
  const cd split = wp - wm;
  const double c = p.gamma / p.beta();

  std::vector<double> terms(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nu = grid.nu(n);
    check_pole(wp, nu);
    check_pole(wm, nu);
    const cd t = 2.0 * c * nu / ((nu - wp) * (nu - wm)) + 4.0 * c * wp * wp / ((nu * nu - wp * wp) * split) +
                 4.0 * c * wm * wm / ((nu * nu - wm * wm) * split);
    terms[n - 1] = real_part(t, 0.0);
  }
  return terms;
}

SeriesResult i1_ohmic(const OscillatorParams& p, std::size_t n_max) {
  const auto terms = i1_ohmic_terms(p, n_max);
  return accumulate(0.0, terms, abs_sum(terms));
}

SeriesResult i1_ohmic_matsubara_poles(const OscillatorParams& p, std::size_t n_max) {
  require_series_params(p);
  const MatsubaraGrid grid(p.hbar * p.beta(), n_max);
  const double c = 2.0 * p.gamma / p.beta();
  std::vector<double> terms(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nu = grid.nu(n);
    terms[n - 1] = -c * nu / (nu * nu + p.gamma * nu + p.omega0 * p.omega0);
  }
  return accumulate(0.0, terms, abs_sum(terms));
}

// --- I1 Drude ----------------------------------------------------------------

namespace {

struct DrudeClosedForm {
  cd l1, l2, l3;
  double wc = 0.0;
  double prefactor = 0.0;
};

DrudeClosedForm drude_closed_form(const OscillatorParams& p, const BathSpec& bath) {
  check_consistent(p, bath);
  if (!bath.is_drude()) throw Error(ErrorKind::InvalidParameter, "Drude bath required");
  if (!(p.hbar > 0.0)) throw Error(ErrorKind::InvalidParameter, "Matsubara series need hbar > 0");
  if (!(p.gamma > 0.0)) throw Error(ErrorKind::InvalidParameter, "i1_drude needs gamma > 0");
  require_not_critical(p);
  const DrudeRoots r = drude_roots(p, bath);
  DrudeClosedForm f{r.lambda1, r.lambda2, r.lambda3, bath.omega_cut(), 0.0};
  const double wc = f.wc;
  f.prefactor = 2.0 * p.gamma * (p.omega0 * p.omega0 + (wc * wc - wc * p.gamma)) / p.beta();
  const double scale = std::max({wc, p.gamma, p.omega0});
  check_nonzero(f.l2 - f.l1, scale, "lambda1 coincides with lambda2");
  check_nonzero(f.l1 - f.l3, scale, "lambda1 coincides with lambda3");
  check_nonzero(wc + f.l1, scale, "omega_cut + lambda1 vanishes");
  return f;
}

}  // namespace

double i1_drude_constant(const OscillatorParams& p, const BathSpec& bath) {
  const DrudeClosedForm f = drude_closed_form(p, bath);
  const cd c = 1.0 / ((f.wc + f.l1) * (f.l2 - f.l1) * (f.l1 - f.l3)) +
               1.0 / ((f.wc + f.l2) * (f.l2 - f.l1) * (f.l3 - f.l2)) +
               1.0 / ((f.wc + f.l3) * (f.l1 - f.l3) * (f.l3 - f.l2));
  return real_part(f.prefactor * c, 0.0);
}

std::vector<double> i1_drude_terms(const OscillatorParams& p, const BathSpec& bath, std::size_t n_max) {
  const DrudeClosedForm f = drude_closed_form(p, bath);
  const MatsubaraGrid grid(p.hbar * p.beta(), n_max);
  const cd l1 = f.l1, l2 = f.l2, l3 = f.l3;
  const double wc = f.wc;
  std::vector<double> terms(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nu = grid.nu(n);
    check_pole(l1, nu);
    check_pole(l2, nu);
    check_pole(l3, nu);
    const double nu2 = nu * nu;
    cd t = nu / ((l1 - nu) * (l2 - nu) * (l3 - nu) * (wc + nu));
    t += 2.0 * l1 * l1 / ((nu2 - l1 * l1) * (l2 - l1) * (l3 - l1) * (wc + l1));
    t += 2.0 * l2 * l2 / ((nu2 - l2 * l2) * (l1 - l2) * (l3 - l2) * (wc + l2));
    t += 2.0 * l3 * l3 / ((nu2 - l3 * l3) * (l1 - l3) * (l2 - l3) * (wc + l3));
    terms[n - 1] = real_part(f.prefactor * t, 0.0);
  }
  return terms;
}

SeriesResult i1_drude(const OscillatorParams& p, const BathSpec& bath, std::size_t n_max) {
  const double c = i1_drude_constant(p, bath);
  const auto terms = i1_drude_terms(p, bath, n_max);
  return accumulate(c, terms, std::abs(c) + abs_sum(terms));
}

SeriesResult i1_drude_dimensionless(const DimensionlessParams& d, std::size_t n_max) {
  d.validate();
  if (!d.sigma) throw Error(ErrorKind::InvalidParameter, "sigma required for a Drude bath");
  if (!(d.x > 0.0)) throw Error(ErrorKind::InvalidParameter, "x must be > 0");
  if (!(d.rho > 0.0)) throw Error(ErrorKind::InvalidParameter, "rho must be > 0");
  if (std::abs(0.5 * d.rho - 1.0) <= kDefaultCriticalTolerance) {
    throw Error(ErrorKind::CriticalDampingSingularity, "rho = 2");
  }
  if (n_max < 1) throw Error(ErrorKind::InvalidParameter, "n_max must be >= 1");
  const double rho = d.rho, s = *d.sigma, x = d.x;
  const cd r = std::sqrt(cd(rho * rho / 4.0 - 1.0, 0.0));
  const double pre = 2.0 * rho * (1.0 + (s * s - s * rho));
  const double scale = std::max({s, rho, 1.0});

  const cd a = 1.5 * rho + r - s;   // lambda2 - lambda1
  const cd b = -1.5 * rho + r + s;  // lambda1 - lambda3
  check_nonzero(a, scale, "lambda1 coincides with lambda2");
  check_nonzero(b, scale, "lambda1 coincides with lambda3");
  check_nonzero(cd(2.0 * s - rho), scale, "omega_cut + lambda1 vanishes");

  const cd c0 = 1.0 / ((2.0 * s - rho) * a * b) - 1.0 / ((s + rho / 2.0 + r) * a * (2.0 * r)) -
                1.0 / ((rho / 2.0 - r + s) * b * (2.0 * r));
  const double constant = real_part(pre * c0, 0.0);

  const cd l1 = s - rho, l2 = rho / 2.0 + r, l3 = rho / 2.0 - r;
  std::vector<double> terms(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double q = kTwoPi * static_cast<double>(n) / x;
    check_pole(l1, q);
    check_pole(l2, q);
    check_pole(l3, q);
    const double q2 = q * q;
    cd t = q / ((s - rho - q) * (rho / 2.0 + r - q) * (rho / 2.0 - r - q) * (s + q));
    t += 2.0 * (s - rho) * (s - rho) /
         ((q2 - (s - rho) * (s - rho)) * (1.5 * rho + r - s) * (1.5 * rho - r - s) * (2.0 * s - rho));
    t -= 2.0 * l2 * l2 / ((q2 - l2 * l2) * (-1.5 * rho - r + s) * (2.0 * r) * (s + rho / 2.0 + r));
    t += 2.0 * l3 * l3 / ((q2 - l3 * l3) * (-1.5 * rho + r + s) * (2.0 * r) * (s + rho / 2.0 - r));
    terms[n - 1] = real_part(pre * t, 0.0);
  }
  return accumulate(constant, terms, std::abs(constant) + abs_sum(terms));
}

SeriesResult i1_drude_matsubara_poles(const OscillatorParams& p, const BathSpec& bath, std::size_t n_max) {
  check_consistent(p, bath);
  if (!bath.is_drude()) throw Error(ErrorKind::InvalidParameter, "Drude bath required");
  require_series_params(p);
  const MatsubaraGrid grid(p.hbar * p.beta(), n_max);
  const double g = p.gamma, wc = bath.omega_cut(), w02 = p.omega0 * p.omega0, beta = p.beta();
  const double K = w02 + wc * wc + 0.5 * g * wc;
  const double constant = g * wc / (beta * K);
  std::vector<double> terms(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nu = grid.nu(n);
    const double Q = (w02 + nu * nu) * (wc + nu) + g * nu * wc;
    const double num = w02 * (wc + nu) - nu * wc * (wc + nu) + 0.5 * g * wc * nu;
    terms[n - 1] = (2.0 * g / beta) * wc * wc * num / ((wc + nu) * K * Q);
  }
  return accumulate(constant, terms, std::abs(constant) + abs_sum(terms));
}

// --- I2 Ohmic ------------------------------------------------------------------

double i2_first_piece_term(const OscillatorParams& p, double nu) {
  const double g = p.gamma;
  const double Omega_sq = p.omega0 * p.omega0 - 0.25 * g * g;
  const double a = p.omega0 * p.omega0 + nu * nu - 0.5 * g * g;
  return nu * nu / (a * a + Omega_sq * g * g);
}

double i2_second_piece_term(const OscillatorParams& p, double nu) {
  const double a = p.omega0 * p.omega0 + nu * nu;
  const double den = a * a - (p.gamma * nu) * (p.gamma * nu);
  if (std::abs(den) < kPoleCollisionTol * a * a) {
    throw Error(ErrorKind::PoleCollision, "(omega0^2 + nu^2)^2 = (gamma nu)^2");
  }
  return nu * nu / den;
}

SeriesResult i2_ohmic(const OscillatorParams& p, std::size_t n_max) {
  require_series_params(p);
  const MatsubaraGrid grid(p.hbar * p.beta(), n_max);
  const double c = p.gamma * p.gamma / p.beta();
  std::vector<double> terms(n_max);
  CompensatedSum scale;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nu = grid.nu(n);
    const double first = i2_first_piece_term(p, nu);
    const double second = i2_second_piece_term(p, nu);
    terms[n - 1] = c * first - c * second;
    scale.add(c * first);
  }
  return accumulate(0.0, terms, scale.value());
}

SeriesResult i2_dimensionless(const DimensionlessParams& d, std::size_t n_max) {
  d.validate();
  if (n_max < 1) throw Error(ErrorKind::InvalidParameter, "n_max must be >= 1");
  const double x = d.x, rho = d.rho;
  const double x2 = x * x, r2 = rho * rho;
  const double pre = r2 * x2;
  std::vector<double> terms(n_max, 0.0);
  CompensatedSum scale;
  if (pre != 0.0) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      const double a = kTwoPi * kTwoPi * static_cast<double>(n) * static_cast<double>(n);  // 4 pi^2 n^2
      const double u = 2.0 * x2 + 2.0 * a - r2 * x2;
      const double den1 = u * u - r2 * (r2 - 4.0);
      const double v = x2 + a;
      const double den2 = v * v - a * r2 * x2;
      check_nonzero(cd(den1), u * u, "first denominator vanishes");
      check_nonzero(cd(den2), v * v, "second denominator vanishes");
      terms[n - 1] = pre * a * (4.0 / den1 - 1.0 / den2);
      scale.add(pre * a / den2);
    }
  }
  return accumulate(0.0, terms, scale.value());
}

// --- circuit -------------------------------------------------------------------

SeriesResult circuit_diff_series(const OscillatorParams& p, std::size_t n_max) {
  require_series_params(p);
  if (!(p.gamma > 0.0)) throw Error(ErrorKind::InvalidParameter, "circuit series needs gamma > 0 (R > 0)");
  const MatsubaraGrid grid(p.hbar * p.beta(), n_max);
  const double g = p.gamma, beta = p.beta();
  std::vector<double> terms(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nu = grid.nu(n);
    const double a = nu * nu + p.omega0 * p.omega0;
    const double den = a * a - (g * nu) * (g * nu);
    if (std::abs(den) < kPoleCollisionTol * a * a) {
      throw Error(ErrorKind::PoleCollision, "(nu^2 + omega0^2)^2 = (gamma nu)^2");
    }
    terms[n - 1] = (g / beta) * nu * a / den - (2.0 * g * g / beta) * i2_first_piece_term(p, nu);
  }
  return accumulate(0.0, terms, abs_sum(terms));
}

SeriesResult circuit_diff_matsubara_poles(const OscillatorParams& p, std::size_t n_max) {
  require_series_params(p);
  const MatsubaraGrid grid(p.hbar * p.beta(), n_max);
  const double c = p.gamma / p.beta();
  std::vector<double> terms(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nu = grid.nu(n);
    terms[n - 1] = c * nu / (nu * nu + p.gamma * nu + p.omega0 * p.omega0);
  }
  return accumulate(0.0, terms, abs_sum(terms));
}

}  // namespace qvirial
