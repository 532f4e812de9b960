#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qvirial/error.hpp"
#include "qvirial/matsubara.hpp"
#include "qvirial/oracle.hpp"

using namespace qvirial;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("I1 quadrature") {
  SECTION("Drude value is cutoff-stable") {
    const auto [p, b] = from_dimensionless({2.0, 3.5, 10.0});
    const double a = i1_integral(p, b, 1e3).value;
    const double c = i1_integral(p, b, 2e3).value;
    const double e = i1_integral(p, b, 4e3).value;
    // the tail falls off as cutoff^-2
    CHECK_THAT((c - a) / (e - c), WithinRel(4.0, 2e-2));
    const double f = i1_integral(p, b, 1e4).value;
    const double g = i1_integral(p, b, 2e4).value;
    CHECK(std::abs(g - f) < 1e-6 * std::abs(g));
  }
  SECTION("Ohmic value grows by a fixed amount per cutoff doubling") {
    const auto [p, b] = from_dimensionless({1.0, 2.5, std::nullopt});
    const CutoffScan s = cutoff_scan([&](double L) { return i1_integral(p, b, L); }, default_cutoff(p, b));
    REQUIRE(s.slopes.size() == 3);
    for (double sl : s.slopes) CHECK_THAT(sl, WithinRel(s.mean_slope, 1e-3));
    CHECK_THAT(s.mean_slope, WithinRel(-p.hbar * p.gamma / kPi, 1e-3));
  }
  SECTION("weak coupling") {
    const auto [p, b] = from_dimensionless({1.0, 1e-6, std::nullopt});
    CHECK(std::abs(i1_integral(p, b, default_cutoff(p, b)).value) < 1e-4 * p.kT());
  }
  SECTION("Ohmic integral needs a finite cutoff") {
    const auto [p, b] = from_dimensionless({1.0, 0.5, std::nullopt});
    CHECK_THROWS_AS(i1_integral(p, b, std::numeric_limits<double>::infinity()), Error);
    CHECK_THROWS_AS(i1_integral(p, b, 2.0), Error);
  }
}

TEST_CASE("I2 quadrature") {
  const auto [p, b] = from_dimensionless({1.0, 1.0, std::nullopt});
  CHECK(std::abs(p.beta() * i2_integral(p, b, default_cutoff(p, b)).value) < 1e-4);
  const auto [p0, b0] = from_dimensionless({1.0, 0.0, std::nullopt});
  CHECK(i2_integral(p0, b0, 1e4).value == 0.0);
  // with a frequency-dependent kernel the integrand is no longer odd
  const auto [pd, bd] = from_dimensionless({1.0, 2.1, 10.0});
  CHECK(i2_integral(pd, bd, default_cutoff(pd, bd)).value > 0.1);
}

TEST_CASE("weak-coupling energy") {
  OscillatorParams p;
  p.hbar = 0.0;
  p.temperature = 3.0;
  CHECK_THAT(mean_energy_weak_coupling(p), WithinRel(1.5, 1e-15));
  p.hbar = 1.0;
  p.temperature = 1e-3;
  CHECK_THAT(mean_energy_weak_coupling(p), WithinRel(0.25, 1e-15));
  p.temperature = 0.5;
  CHECK_THAT(mean_energy_weak_coupling(p), WithinRel(0.25 / std::tanh(1.0), 1e-15));
}

TEST_CASE("position variance and kinetic energy") {
  SECTION("weak coupling") {
    const auto [p, b] = from_dimensionless({1.0, 1e-3, std::nullopt});
    CHECK_THAT(position_variance(p, b, default_cutoff(p, b)).value, WithinRel(mean_energy_weak_coupling(p), 5e-3));
  }
  SECTION("classical equipartition") {
    for (double g : {0.3, 1.2, 1.9}) {
      OscillatorParams p;
      p.gamma = g;
      p.hbar = 0.0;
      p.temperature = 0.8;
      const BathSpec b = BathSpec::ohmic(g);
      CHECK_THAT(position_variance(p, b, default_cutoff(p, b)).value, WithinRel(0.4, 1e-4));
    }
  }
  SECTION("K - V = (I2 - I1)/2 for a Drude bath") {
    const auto [p, b] = from_dimensionless({1.0, 2.1, 10.0});
    const double L = default_cutoff(p, b);
    const double K = mean_kinetic_energy(p, b, L).value;
    const double V = position_variance(p, b, L).value;
    const double I1 = i1_integral(p, b, L).value;
    const double I2 = i2_integral(p, b, L).value;
    CHECK_THAT(K - V, WithinRel(0.5 * (I2 - I1), 1e-6));
    CHECK_THAT(K, WithinRel(0.932106115257, 1e-8));
    CHECK_THAT(V, WithinRel(0.536257887055, 1e-8));
    // residue series at 2000 terms, O(1/N) truncation
    CHECK_THAT(i1_drude_matsubara_poles(p, b, 2000).last(), WithinRel(I1, 2e-3));
  }
  SECTION("quantum Ohmic kinetic energy is cutoff-dependent") {
    const auto [p, b] = from_dimensionless({1.0, 0.5, std::nullopt});
    const double a = mean_kinetic_energy(p, b, 1e3).value;
    const double c = mean_kinetic_energy(p, b, 2e3).value;
    CHECK_THAT(c - a, WithinRel(p.hbar * p.gamma / (2.0 * kPi) * std::log(2.0), 1e-2));
  }
}

TEST_CASE("error estimates bound the tolerance refinement") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.25, 4.0), ur(0.05, 1.9);
  int ok = 0, total = 0;
  for (int i = 0; i < 20; ++i) {
    const auto [p, b] = from_dimensionless({ux(rng), ur(rng), std::nullopt});
    const double L = default_cutoff(p, b);
    const auto coarse = position_variance(p, b, L, 1e-7);
    const auto fine = position_variance(p, b, L, 1e-8);
    ++total;
    if (std::abs(coarse.value - fine.value) <= coarse.err) ++ok;
  }
  CHECK(ok >= 0.95 * total);
}

TEST_CASE("cutoff defaults") {
  const auto [p, b] = from_dimensionless({1.0, 2.1, 10.0});
  CHECK(natural_frequency_scale(p, b) == 10.0);
  CHECK(default_cutoff(p, b) == 1e5);
  const auto bp = resonance_breakpoints(p, b, 1e5);
  CHECK_FALSE(bp.empty());
}
