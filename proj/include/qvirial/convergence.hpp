#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qvirial {

struct Converged {};

struct LogDivergent {
  double slope = 0.0;  ///< b in S_N = a + b ln N
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct Undetermined {};

using Verdict = std::variant<Converged, LogDivergent, Undetermined>;

std::string to_string(const Verdict& v);

struct SeriesResult {
  std::vector<double> partial_sums;  ///< partial_sums[k] = S_{k+1}
  std::optional<double> estimate;    ///< only set when the verdict is Converged
  std::size_t n_terms = 0;
  Verdict verdict = Undetermined{};
  double err_estimate = 0.0;  ///< |S_N - S_{N/2}|

  double last() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
  bool converged() const { return std::holds_alternative<Converged>(verdict); }
  bool log_divergent() const { return std::holds_alternative<LogDivergent>(verdict); }
};

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of y against x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Fit S_N = a + b ln N over N in [first_n, last_n] (1-based, inclusive).
LinearFit fit_log_growth(const std::vector<double>& partial_sums, std::size_t first_n, std::size_t last_n);

inline constexpr std::size_t kMinPartialSums = 64;
inline constexpr double kLogFitMinR2 = 0.999;
inline constexpr double kConvergedDecayExponent = -1.5;

/// Classifies a sequence of partial sums. Tail increments (second half) decaying
/// faster than n^-1.5 give Converged; otherwise a fit S_N = a + b ln N over the
/// last decade with R^2 > 0.999 and |b| clearly nonzero gives LogDivergent.
/// scale is the magnitude of the individual contributions; increments below
/// rounding level relative to it count as zero. Requires >= 64 partial sums.
Verdict diagnose_convergence(const std::vector<double>& partial_sums, double scale = 0.0);

/// Wraps partial sums into a SeriesResult with verdict and error estimate.
SeriesResult make_series_result(std::vector<double> partial_sums, double scale = 0.0);

}  // namespace qvirial
