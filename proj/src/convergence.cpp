#include "qvirial/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qvirial/error.hpp"

namespace qvirial {

std::string to_string(const Verdict& v) {
  if (std::holds_alternative<Converged>(v)) return "converged";
  if (const auto* d = std::get_if<LogDivergent>(&v)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "log-divergent(slope=%.6g)", d->slope);
    return buf;
  }
  return "undetermined";
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  LinearFit fit;
  if (n < 2) return fit;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

LinearFit fit_log_growth(const std::vector<double>& partial_sums, std::size_t first_n, std::size_t last_n) {
  if (first_n < 1 || last_n > partial_sums.size() || first_n >= last_n) {
    throw Error(ErrorKind::InvalidParameter, "bad fit range");
  }
  std::vector<double> x, y;
  for (std::size_t n = first_n; n <= last_n; ++n) {
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(partial_sums[n - 1]);
  }
  return fit_line(x, y);
}

Verdict diagnose_convergence(const std::vector<double>& s, double scale) {
  const std::size_t n_total = s.size();
  if (n_total < kMinPartialSums) {
    throw Error(ErrorKind::InvalidParameter, "diagnose_convergence needs at least 64 partial sums");
  }
  double mag = std::abs(scale);
  for (double v : s) mag = std::max(mag, std::abs(v));
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * mag;

  // Decay exponent of the increments over the second half.
  std::vector<double> ln_n, ln_d;
  for (std::size_t n = n_total / 2 + 1; n <= n_total; ++n) {
    const double d = std::abs(s[n - 1] - s[n - 2]);
    if (d > noise) {
      ln_n.push_back(std::log(static_cast<double>(n)));
      ln_d.push_back(std::log(d));
    }
  }
  if (ln_n.size() < 8) return Converged{};
  const LinearFit decay = fit_line(ln_n, ln_d);
  if (decay.slope < kConvergedDecayExponent) return Converged{};

  const std::size_t first = std::max<std::size_t>(1, n_total / 10);
  const LinearFit growth = fit_log_growth(s, first, n_total);
  const double floor = 1e3 * noise;
  if (growth.r_squared > kLogFitMinR2 && std::abs(growth.slope) > floor) {
    return LogDivergent{growth.slope, growth.intercept, growth.r_squared};
  }
  return Undetermined{};
}

SeriesResult make_series_result(std::vector<double> partial_sums, double scale) {
  SeriesResult r;
  r.n_terms = partial_sums.size();
  r.partial_sums = std::move(partial_sums);
  if (r.n_terms >= 2) {
    r.err_estimate = std::abs(r.partial_sums.back() - r.partial_sums[r.n_terms / 2 - 1]);
  }
  r.verdict = r.n_terms >= kMinPartialSums ? diagnose_convergence(r.partial_sums, scale) : Verdict{Undetermined{}};
  if (r.converged()) r.estimate = r.partial_sums.back();
  return r;
}

}  // namespace qvirial
