#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qvirial/error.hpp"
#include "qvirial/matsubara.hpp"
#include "qvirial/oracle.hpp"

using namespace qvirial;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

OscillatorParams unit_osc(double gamma, double beta, double hbar = 1.0) {
  OscillatorParams p;
  p.gamma = gamma;
  p.temperature = 1.0 / beta;
  p.hbar = hbar;
  return p;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no qvirial::Error thrown");
  return ErrorKind::InvalidParameter;
}

std::vector<double> increments(const std::vector<double>& s) {
  std::vector<double> t(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) t[i] = s[i] - (i ? s[i - 1] : 0.0);
  return t;
}

}  // namespace

TEST_CASE("Ohmic roots") {
  // omega_+- = gamma/2 +- sqrt(gamma^2/4 - omega0^2)
  const auto r = ohmic_roots(unit_osc(1.0, 1.0));
  CHECK_THAT(r.Omega_sq, WithinRel(0.75, 1e-15));
  CHECK_THAT(r.omega_plus.real(), WithinRel(0.5, 1e-15));
  CHECK_THAT(r.omega_plus.imag(), WithinRel(std::sqrt(0.75), 1e-15));
  const auto o = ohmic_roots(unit_osc(3.0, 1.0));
  CHECK(o.Omega_sq < 0.0);
}

TEST_CASE("Ohmic I1 series") {
  const OscillatorParams p = unit_osc(2.5, 1.0);

  SECTION("diverges logarithmically with a positive slope") {
    const auto r = i1_ohmic(p, 2000);
    REQUIRE(r.log_divergent());
    CHECK(std::get<LogDivergent>(r.verdict).slope > 0.0);
    CHECK(std::get<LogDivergent>(r.verdict).r_squared > 0.999);
  }
  SECTION("terms approach 2 gamma / (beta nu_n)") {
    const auto t = i1_ohmic_terms(p, 10000);
    const double nu = 2.0 * kPi * 10000.0;
    CHECK_THAT(t.back() / (2.0 * p.gamma / (p.beta() * nu)), WithinAbs(1.0, 1e-2));
  }
  SECTION("under-damped evaluation leaves an imaginary part") {
    CHECK(kind_of([] { i1_ohmic(unit_osc(0.5, 1.0)); }) == ErrorKind::NonRealResult);
  }
  SECTION("critical damping") {
    CHECK(kind_of([] { i1_ohmic(unit_osc(2.0, 1.0)); }) == ErrorKind::CriticalDampingSingularity);
  }
  SECTION("classical parameters are rejected") {
    CHECK(kind_of([] { i1_ohmic(unit_osc(2.5, 1.0, 0.0)); }) == ErrorKind::InvalidParameter);
  }
}

TEST_CASE("Ohmic I1 against the cutoff-matched quadrature") {
  // Truncating at N corresponds to a frequency cutoff at nu_N.
  for (double rho : {0.5, 2.5}) {
    const auto [p, b] = from_dimensionless({1.0, rho, std::nullopt});
    const std::size_t N = 200;
    const double cutoff = 2.0 * kPi * N / (p.hbar * p.beta());
    const double q = i1_integral(p, b, cutoff).value;
    CHECK_THAT(i1_ohmic_matsubara_poles(p, N).last(), WithinRel(q, 5e-2));
    if (rho > 2.0) {
      // the closed-form series grows with the opposite sign
      CHECK(i1_ohmic(p, N).last() * q < 0.0);
    }
  }
}

TEST_CASE("Drude I1 series") {
  SECTION("published form increases with x and grows with rho") {
    double prev = -1e300;
    for (double x = 0.5; x <= 3.0 + 1e-12; x += 0.25) {
      const double v = i1_drude_dimensionless({x, 2.1, 10.0}).last();
      CHECK(v > prev);
      prev = v;
    }
    for (double x : {0.5, 1.0, 2.0, 3.0}) {
      CHECK(std::abs(i1_drude_dimensionless({x, 3.5, 10.0}).last()) >
            std::abs(i1_drude_dimensionless({x, 2.1, 10.0}).last()));
    }
  }
  SECTION("dimensional and dimensionless forms agree") {
    OscillatorParams p = unit_osc(3.5, 1.0);
    const BathSpec b = BathSpec::drude(3.5, 10.0);
    const double dim = p.beta() * i1_drude(p, b).last();
    const double nodim = i1_drude_dimensionless({1.0, 3.5, 10.0}).last();
    CHECK(std::abs(dim - nodim) <= 1e-12 * std::abs(nodim));
  }
  SECTION("published values at the figure parameters") {
    CHECK_THAT(i1_drude_dimensionless({1.0, 2.1, 10.0}).last(), WithinRel(0.411175801, 1e-8));
    CHECK_THAT(i1_drude_dimensionless({2.0, 3.5, 10.0}).last(), WithinRel(1.60689523, 1e-8));
  }
  SECTION("residue form approaches the quadrature as O(1/N)") {
    const auto [p, b] = from_dimensionless({2.0, 3.5, 10.0});
    const double q = i1_integral(p, b, default_cutoff(p, b)).value;
    const double e500 = std::abs(i1_drude_matsubara_poles(p, b, 500).last() - q);
    const double e1000 = std::abs(i1_drude_matsubara_poles(p, b, 1000).last() - q);
    CHECK(e500 < 1e-2 * std::abs(q));
    CHECK_THAT(e500 / e1000, WithinAbs(2.0, 0.1));
    // published closed form has the opposite sign
    CHECK(i1_drude(p, b, 500).last() * q < 0.0);
  }
  SECTION("Drude residue terms reduce to the Ohmic ones for large omega_cut") {
    const auto [p, b] = from_dimensionless({1.0, 2.5, 1e7});
    const auto d = increments(i1_drude_matsubara_poles(p, b, 100).partial_sums);
    const auto o = increments(i1_ohmic_matsubara_poles(p, 100).partial_sums);
    // first increment carries the n-independent Drude constant
    for (std::size_t n = 1; n < 100; ++n) CHECK_THAT(d[n] / o[n], WithinAbs(1.0, 1e-3));
  }
  SECTION("published Drude terms do not approach the published Ohmic terms") {
    const auto [p, b] = from_dimensionless({1.0, 2.5, 1e6});
    const auto d = i1_drude_terms(p, b, 100);
    const auto o = i1_ohmic_terms(p, 100);
    double worst = 0.0;
    for (std::size_t n = 0; n < 100; ++n) worst = std::max(worst, std::abs(d[n] / o[n] - 1.0));
    CHECK(worst > 0.5);
  }
  SECTION("errors") {
    const OscillatorParams p = unit_osc(2.0, 1.0);
    CHECK(kind_of([&] { i1_drude(p, BathSpec::drude(2.0, 10.0)); }) == ErrorKind::CriticalDampingSingularity);
    CHECK(kind_of([&] { i1_drude(unit_osc(1.0, 1.0), BathSpec::ohmic(1.0)); }) == ErrorKind::InvalidParameter);
    CHECK(kind_of([] { i1_drude_dimensionless({1.0, 2.1, std::nullopt}); }) == ErrorKind::InvalidParameter);
  }
}

TEST_CASE("Ohmic I2 series") {
  SECTION("the closed form cancels term by term") {
    for (double g : {0.1, 0.75, 1.5, 3.0}) {
      const auto r = i2_ohmic(unit_osc(g, 2.0));
      CHECK(r.converged());
      CHECK(std::abs(r.last()) < 1e-14);
    }
  }
  SECTION("matches the quadrature relative to the size of its terms") {
    const OscillatorParams p = unit_osc(0.75, 2.0);
    const auto r = i2_ohmic(p, 500);
    const double q = i2_integral(p, BathSpec::ohmic(0.75), default_cutoff(p, BathSpec::ohmic(0.75))).value;
    double scale = 0.0;
    for (std::size_t n = 1; n <= 500; ++n) scale += 0.75 * 0.75 / p.beta() * i2_first_piece_term(p, 2.0 * kPi * n / p.beta());
    CHECK(std::abs(r.last() - q) <= 1e-6 * scale);
  }
  SECTION("classical and undamped limits") {
    CHECK(std::abs(i2_ohmic(unit_osc(0.75, 2.0, 1e-4)).last()) < 1e-12);
    CHECK(std::abs(i2_ohmic(unit_osc(1e-8, 2.0)).last()) < 1e-12);
  }
  SECTION("both pieces share the expanded denominator") {
    const OscillatorParams p = unit_osc(0.9, 1.0);
    for (double nu : {0.5, 6.28, 100.0}) {
      const double a = 1.0 + nu * nu;
      const double expected = nu * nu / (a * a - 0.81 * nu * nu);
      CHECK_THAT(i2_first_piece_term(p, nu), WithinRel(expected, 1e-13));
      CHECK_THAT(i2_second_piece_term(p, nu), WithinRel(expected, 1e-13));
    }
  }
}

TEST_CASE("dimensionless I2") {
  for (double rho : {0.5, 0.75, 1.0, 1.25}) {
    CHECK(std::abs(i2_dimensionless({1.0, rho, std::nullopt}).last()) <= 1e-3);
    CHECK(i2_dimensionless({0.5, rho, std::nullopt}).last() < 0.0);
    CHECK(i2_dimensionless({2.0, rho, std::nullopt}).last() > 0.0);
  }
  CHECK(i2_dimensionless({1.7, 0.0, std::nullopt}).last() == 0.0);
  CHECK_THAT(i2_dimensionless({2.0, 0.5, std::nullopt}).last(), WithinRel(4.1503005125936668e-05, 1e-8));
}

TEST_CASE("circuit difference series") {
  const OscillatorParams p = unit_osc(0.5, 1.0);
  SECTION("log-divergent with a positive slope") {
    const auto r = circuit_diff_series(p, 2000);
    REQUIRE(r.log_divergent());
    CHECK(std::get<LogDivergent>(r.verdict).slope > 0.0);
    // residue form: (gamma / beta) sum nu/(nu^2 + gamma nu + omega0^2) ~ (gamma / 2 pi) ln N
    const auto poles = circuit_diff_matsubara_poles(p, 2000);
    REQUIRE(poles.log_divergent());
    CHECK_THAT(std::get<LogDivergent>(poles.verdict).slope, WithinRel(0.5 / (2.0 * kPi), 2e-2));
  }
  SECTION("second sum is the I2 first piece scaled by -2 gamma^2 / beta") {
    const auto t = increments(circuit_diff_series(p, 100).partial_sums);
    for (std::size_t n = 1; n <= 100; ++n) {
      const double nu = 2.0 * kPi * n / p.beta();
      const double a = nu * nu + 1.0;
      const double first = (p.gamma / p.beta()) * nu * a / (a * a - p.gamma * p.gamma * nu * nu);
      const double second = -2.0 * p.gamma * p.gamma / p.beta() * nu * nu / (a * a - p.gamma * p.gamma * nu * nu);
      CHECK_THAT(t[n - 1], WithinRel(first + second, 1e-12));
    }
  }
  SECTION("vanishes as hbar goes to zero at fixed truncation") {
    double prev = 1e300;
    for (double h : {1e-1, 1e-2, 1e-3}) {
      const double v = std::abs(circuit_diff_series(unit_osc(0.5, 1.0, h), 500).last());
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 1e-3);
  }
}

TEST_CASE("pole collisions are reported") {
  // nu_1 = 2 pi when beta = hbar = 1; omega0^2 + nu^2 = gamma nu makes the second I2 piece singular.
  const double nu = 2.0 * kPi;
  OscillatorParams p = unit_osc(0.0, 1.0);
  p.omega0 = 1.0;
  p.gamma = (1.0 + nu * nu) / nu;
  CHECK(kind_of([&] { i2_second_piece_term(p, nu); }) == ErrorKind::PoleCollision);
}
