#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "qvirial/convergence.hpp"
#include "qvirial/error.hpp"
#include "qvirial/quadrature.hpp"
#include "qvirial/summation.hpp"

using namespace qvirial;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> partial_sums(std::size_t n, auto term) {
  std::vector<double> s(n);
  CompensatedSum acc;
  for (std::size_t k = 1; k <= n; ++k) {
    acc.add(term(static_cast<double>(k)));
    s[k - 1] = acc.value();
  }
  return s;
}

}  // namespace

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 10000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK_THAT(s.value(), WithinRel(1e-12, 1e-10));

  CompensatedComplexSum z;
  z.add({1e20, 1.0});
  z.add({1.0, -1.0});
  z.add({-1e20, 0.5});
  CHECK(z.value() == std::complex<double>(1.0, 0.5));
}

TEST_CASE("adaptive Gauss-Kronrod") {
  const auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK_THAT(r.value, WithinRel(2.0, 1e-13));
  CHECK(r.err <= 1e-9);

  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  const auto peak = integrate([](double x) { return 1e-3 / (x * x + 1e-6); }, -1.0, 1.0, opt);
  CHECK_THAT(peak.value, WithinRel(2.0 * std::atan(1e3), 1e-10));

  const auto sq = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, opt);
  CHECK_THAT(sq.value, WithinRel(2.0 / 3.0, 1e-11));

  SECTION("impossible tolerance is reported") {
    QuadratureOptions tight;
    tight.abs_tol = 1e-300;
    tight.rel_tol = 0.0;
    tight.max_intervals = 5;
    CHECK_THROWS_AS(integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, tight), Error);
  }
}

TEST_CASE("semi-infinite integrals") {
  const auto e = integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 1.0);
  CHECK_THAT(e.value, WithinRel(1.0, 1e-11));

  const auto lorentz = integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0);
  CHECK_THAT(lorentz.value, WithinRel(std::numbers::pi / 2.0, 1e-10));

  QuadratureOptions opt;
  opt.abs_tol = 1e-11;
  auto sinc = [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; };
  const double head = integrate(sinc, 0.0, 10.0, opt).value;
  const auto tail = integrate_oscillatory_tail(sinc, 10.0, 1.0, opt);
  CHECK_THAT(head + tail.value, WithinRel(std::numbers::pi / 2.0, 1e-9));

  // int_0^inf cos(3x)/(1+x^2) dx = (pi/2) e^{-3}
  const auto ft = integrate_oscillatory_tail([](double x) { return std::cos(3.0 * x) / (1.0 + x * x); }, 0.0, 3.0, opt);
  CHECK_THAT(ft.value, WithinRel(std::numbers::pi / 2.0 * std::exp(-3.0), 1e-8));
}

TEST_CASE("convergence verdicts") {
  SECTION("p-series converges") {
    const auto r = make_series_result(partial_sums(500, [](double n) { return 1.0 / (n * n); }));
    CHECK(r.converged());
    REQUIRE(r.estimate.has_value());
    CHECK_THAT(*r.estimate, WithinAbs(std::numbers::pi * std::numbers::pi / 6.0, 3e-3));
  }
  SECTION("harmonic series diverges logarithmically with unit slope") {
    const auto r = make_series_result(partial_sums(2000, [](double n) { return 1.0 / n; }));
    REQUIRE(r.log_divergent());
    const auto& ld = std::get<LogDivergent>(r.verdict);
    CHECK_THAT(ld.slope, WithinAbs(1.0, 0.01));
    CHECK(ld.r_squared > 0.999);
    CHECK_FALSE(r.estimate.has_value());
  }
  SECTION("alternating unit steps are undetermined") {
    const auto r = make_series_result(partial_sums(500, [](double n) { return std::fmod(n, 2.0) == 1.0 ? -1.0 : 1.0; }));
    CHECK(std::holds_alternative<Undetermined>(r.verdict));
  }
  SECTION("rounding-level increments of an exactly cancelling series count as converged") {
    std::vector<double> s(200);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = (i % 3 == 0 ? 1.0 : -1.0) * 1e-18;
    CHECK(std::holds_alternative<Converged>(diagnose_convergence(s, 1.0)));
  }
  SECTION("too few sums") {
    CHECK_THROWS_AS(diagnose_convergence(std::vector<double>(10, 1.0)), Error);
  }
  CHECK(to_string(Verdict{Converged{}}) == "converged");
}

TEST_CASE("log fit") {
  std::vector<double> s(100);
  for (std::size_t n = 1; n <= s.size(); ++n) s[n - 1] = 0.25 + 1.5 * std::log(static_cast<double>(n));
  const LinearFit f = fit_log_growth(s, 10, 100);
  CHECK_THAT(f.slope, WithinRel(1.5, 1e-12));
  CHECK_THAT(f.intercept, WithinRel(0.25, 1e-10));
  CHECK_THAT(f.r_squared, WithinRel(1.0, 1e-12));
}
