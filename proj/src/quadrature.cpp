#include "qvirial/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "qvirial/error.hpp"
#include "qvirial/summation.hpp"

namespace qvirial {

namespace {

// Kronrod 15-point abscissae (positive half) and weights; Gauss 7-point weights
// sit on the odd Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, err;
  bool operator<(const Piece& o) const { return err < o.err; }
};

Piece gk15(const Integrand& f, double a, double b, std::size_t& n_evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  n_evals += 15;
  resk *= h;
  resg *= h;
  resabs *= std::abs(h);
  if (!std::isfinite(resk)) {
    throw Error(ErrorKind::ToleranceNotMet,
                "non-finite integrand on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  const double err = std::max(std::abs(resk - resg), 50.0 * std::numeric_limits<double>::epsilon() * resabs);
  return {a, b, resk, err};
}

bool splittable(const Piece& p) {
  const double mid = 0.5 * (p.a + p.b);
  const double scale = std::max({std::abs(p.a), std::abs(p.b), std::numeric_limits<double>::min()});
  return (p.b - p.a) > 1e3 * std::numeric_limits<double>::epsilon() * scale && mid > p.a && mid < p.b;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opt) {
  if (!(std::isfinite(a) && std::isfinite(b))) throw Error(ErrorKind::InvalidParameter, "finite limits required");
  QuadratureResult out;
  if (a == b) return out;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<double> cuts{a};
  for (double x : opt.breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Piece> active;
  std::vector<Piece> frozen;
  std::size_t n_evals = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) active.push(gk15(f, cuts[i], cuts[i + 1], n_evals));

  auto totals = [&]() {
    CompensatedSum v, e;
    auto copy = active;
    while (!copy.empty()) {
      v.add(copy.top().value);
      e.add(copy.top().err);
      copy.pop();
    }
    for (const auto& p : frozen) {
      v.add(p.value);
      e.add(p.err);
    }
    return std::pair{v.value(), e.value()};
  };

  // Running totals are updated incrementally; a full recompute at the end
  // removes drift.
  double value = 0.0, err = 0.0;
  {
    auto [v, e] = totals();
    value = v;
    err = e;
  }
  std::size_t n_intervals = active.size();
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
    if (active.empty()) {
      throw Error(ErrorKind::ToleranceNotMet, "roundoff limit reached, err=" + std::to_string(err));
    }
    if (n_intervals >= opt.max_intervals) {
      throw Error(ErrorKind::ToleranceNotMet, "interval limit reached, err=" + std::to_string(err));
    }
    Piece worst = active.top();
    active.pop();
    if (!splittable(worst)) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Piece l = gk15(f, worst.a, mid, n_evals);
    Piece r = gk15(f, mid, worst.b, n_evals);
    value += (l.value + r.value) - worst.value;
    err += (l.err + r.err) - worst.err;
    active.push(l);
    active.push(r);
    ++n_intervals;
  }
  auto [v, e] = totals();
  out.value = sign * v;
  out.err = e;
  out.n_evals = n_evals;
  out.cutoff = b;
  return out;
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, double scale, const QuadratureOptions& opt) {
  if (!(scale > 0.0)) throw Error(ErrorKind::InvalidParameter, "scale must be > 0");
  QuadratureOptions mapped = opt;
  mapped.breakpoints.clear();
  for (double w : opt.breakpoints) {
    if (w > a && std::isfinite(w)) mapped.breakpoints.push_back((w - a) / (scale + w - a));
  }
  auto g = [&](double t) {
    const double one_minus = 1.0 - t;
    const double w = a + scale * t / one_minus;
    if (!std::isfinite(w)) return 0.0;
    const double jac = scale / (one_minus * one_minus);
    const double v = f(w);
    return v == 0.0 ? 0.0 : v * jac;
  };
  QuadratureResult r = integrate(g, 0.0, 1.0, mapped);
  r.cutoff = std::numeric_limits<double>::infinity();
  return r;
}

namespace {

// Wynn epsilon table on a growing sequence; returns the latest diagonal estimate.
class WynnEpsilon {
 public:
  double push(double s) {
    std::vector<double> next(table_.size() + 1);
    next[0] = s;
    for (std::size_t k = 1; k < next.size(); ++k) {
      const double diff = next[k - 1] - table_[k - 1];
      const double prev = k >= 2 ? table_[k - 2] : 0.0;
      next[k] = diff == 0.0 ? std::numeric_limits<double>::infinity() : prev + 1.0 / diff;
    }
    if (next.size() > kMaxDepth) next.resize(kMaxDepth);
    table_ = std::move(next);
    // Even columns hold estimates; take the deepest finite one.
    for (std::size_t k = (table_.size() - 1) & ~std::size_t{1};; k -= 2) {
      if (std::isfinite(table_[k])) return table_[k];
      if (k < 2) break;
    }
    return s;
  }

 private:
  static constexpr std::size_t kMaxDepth = 41;
  std::vector<double> table_;
};

}  // namespace

QuadratureResult integrate_oscillatory_tail(const Integrand& f, double a, double frequency,
                                            const QuadratureOptions& opt, std::size_t max_cycles) {
  if (!(frequency > 0.0)) throw Error(ErrorKind::InvalidParameter, "frequency must be > 0");
  const double half = std::numbers::pi / frequency;
  QuadratureOptions piece_opt = opt;
  piece_opt.breakpoints.clear();
  piece_opt.abs_tol = opt.abs_tol * 1e-2;

  CompensatedSum partial;
  WynnEpsilon wynn;
  QuadratureResult out;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double prev2 = prev;
  for (std::size_t k = 0; k < 2 * max_cycles; ++k) {
    const double lo = a + static_cast<double>(k) * half;
    QuadratureResult piece = integrate(f, lo, lo + half, piece_opt);
    out.n_evals += piece.n_evals;
    out.err += piece.err;
    partial.add(piece.value);
    const double est = wynn.push(partial.value());
    if (k >= 6) {
      const double delta = std::abs(est - prev) + std::abs(prev - prev2);
      if (delta <= std::max(opt.abs_tol, opt.rel_tol * std::abs(est))) {
        out.value = est;
        out.err += delta;
        return out;
      }
    }
    prev2 = prev;
    prev = est;
  }
  throw Error(ErrorKind::ToleranceNotMet, "oscillatory tail did not settle");
}

}  // namespace qvirial
