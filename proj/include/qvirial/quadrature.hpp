#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace qvirial {

struct QuadratureResult {
  double value = 0.0;
  double err = 0.0;  ///< absolute error estimate, >= 0
  std::size_t n_evals = 0;
  double cutoff = std::numeric_limits<double>::infinity();  ///< frequency cutoff used
  bool cutoff_extrapolated = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-12;
  std::size_t max_intervals = 20000;
  /// Interior points where the interval is split before adaptation starts.
  std::vector<double> breakpoints;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b] with global error control.
/// The interval with the largest error estimate is bisected until
/// err <= max(abs_tol, rel_tol*|value|). Throws ToleranceNotMet when
/// max_intervals is exhausted or the integrand returns a non-finite value.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opt = {});

/// Integral over [a, inf) after the substitution w = a + s*t/(1-t), t in [0,1).
/// scale sets where the mapped grid is densest; breakpoints are mapped too.
QuadratureResult integrate_to_infinity(const Integrand& f, double a, double scale,
                                       const QuadratureOptions& opt = {});

/// Integral of f(w) over [a, inf) for a tail that oscillates with period
/// 2*pi/frequency and decays slowly. Half-cycles are integrated one by one and
/// their partial sums accelerated with Wynn's epsilon algorithm.
QuadratureResult integrate_oscillatory_tail(const Integrand& f, double a, double frequency,
                                            const QuadratureOptions& opt = {},
                                            std::size_t max_cycles = 400);

}  // namespace qvirial
