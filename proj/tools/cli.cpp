#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "qvirial/circuit.hpp"
#include "qvirial/config.hpp"
#include "qvirial/error.hpp"
#include "qvirial/langevin.hpp"
#include "qvirial/matsubara.hpp"
#include "qvirial/oracle.hpp"

#ifndef QVIRIAL_VERSION_STRING
#define QVIRIAL_VERSION_STRING "unknown"
#endif

namespace qvirial::cli {

const char* version() { return QVIRIAL_VERSION_STRING; }

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  explicit Csv(const std::string& command) {
    comment(std::string("qvirial ") + version());
    comment("command: " + command);
  }
  void comment(const std::string& line) { buf_ << "# " << line << '\n'; }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) buf_ << (i ? "," : "") << cells[i];
    buf_ << '\n';
  }
  void emit(const std::string& path, std::ostream& out) const {
    if (path.empty()) {
      out << buf_.str();
      return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::InvalidParameter, "cannot write " + path);
    f << buf_.str();
  }

 private:
  std::ostringstream buf_;
};

struct Common {
  std::string config_path;
  std::string out_path;
  unsigned threads = 0;
  ConfigTable cfg;
};

// Flags win over the config file: a config value is used only when the flag was not given.
void from_config(const CLI::Option* opt, double& value, const ConfigTable& cfg, const std::string& key) {
  if (opt->count() == 0) {
    if (auto v = cfg.number(key)) value = *v;
  }
}

void from_config(const CLI::Option* opt, std::size_t& value, const ConfigTable& cfg, const std::string& key) {
  if (opt->count() == 0) {
    if (auto v = cfg.number(key)) {
      if (*v < 0.0 || *v != std::floor(*v)) throw Error(ErrorKind::InvalidParameter, key + " must be a whole number");
      value = static_cast<std::size_t>(*v);
    }
  }
}

void from_config(const CLI::Option* opt, std::string& value, const ConfigTable& cfg, const std::string& key) {
  if (opt->count() == 0) {
    if (auto v = cfg.text(key)) value = *v;
  }
}

// Evaluates f(0..n-1) on a small thread pool; results come back in index order.
template <class R>
std::vector<R> parallel_map(std::size_t n, unsigned threads, const std::function<R(std::size_t)>& f) {
  std::vector<R> out(n);
  unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  t = static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) out[i] = f(i);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

// --- sweeps ----------------------------------------------------------------------

struct SweepSpec {
  std::string variable = "x";
  double start = 0.2;
  double stop = 3.0;
  std::size_t steps = 29;
  double x = 1.0;
  double rho = 0.5;
  double sigma = 10.0;
  std::size_t n_terms = kDefaultTerms;

  void validate(const std::vector<std::string>& allowed) const {
    if (std::find(allowed.begin(), allowed.end(), variable) == allowed.end()) {
      throw Error(ErrorKind::InvalidParameter, "cannot sweep '" + variable + "' here");
    }
    if (!(start < stop)) throw Error(ErrorKind::InvalidParameter, "start must be < stop");
    if (steps < 2) throw Error(ErrorKind::InvalidParameter, "steps must be >= 2");
    if (n_terms < 1) throw Error(ErrorKind::InvalidParameter, "n_terms must be >= 1");
  }

  double at(std::size_t i) const {
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }

  DimensionlessParams point(std::size_t i, bool with_sigma) const {
    DimensionlessParams d{x, rho, with_sigma ? std::optional<double>(sigma) : std::nullopt};
    const double v = at(i);
    if (variable == "x") d.x = v;
    if (variable == "rho") d.rho = v;
    if (variable == "sigma") d.sigma = v;
    return d;
  }
};

struct SweepOptions {
  CLI::Option *variable, *start, *stop, *steps, *x, *rho, *sigma, *n_terms;
};

SweepOptions add_sweep_options(CLI::App* app, SweepSpec& s, bool with_sigma) {
  SweepOptions o{};
  o.variable = app->add_option("--variable", s.variable, "swept parameter")->capture_default_str();
  o.start = app->add_option("--start", s.start, "first grid value")->capture_default_str();
  o.stop = app->add_option("--stop", s.stop, "last grid value")->capture_default_str();
  o.steps = app->add_option("--steps", s.steps, "number of grid points (>= 2)")->capture_default_str();
  o.x = app->add_option("--x", s.x, "x = hbar beta omega0 when fixed")->capture_default_str();
  o.rho = app->add_option("--rho", s.rho, "rho = gamma/omega0 when fixed")->capture_default_str();
  o.sigma = with_sigma ? app->add_option("--sigma", s.sigma, "sigma = omega_cut/omega0 when fixed")->capture_default_str()
                       : nullptr;
  o.n_terms = app->add_option("--n-terms", s.n_terms, "series truncation")->capture_default_str();
  return o;
}

void merge_sweep(const SweepOptions& o, SweepSpec& s, const ConfigTable& cfg) {
  from_config(o.variable, s.variable, cfg, "sweep.variable");
  from_config(o.start, s.start, cfg, "sweep.start");
  from_config(o.stop, s.stop, cfg, "sweep.stop");
  from_config(o.steps, s.steps, cfg, "sweep.steps");
  from_config(o.x, s.x, cfg, "sweep.x");
  from_config(o.rho, s.rho, cfg, "sweep.rho");
  if (o.sigma) from_config(o.sigma, s.sigma, cfg, "sweep.sigma");
  from_config(o.n_terms, s.n_terms, cfg, "series.n_terms");
}

struct PointResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::string verdict;
};

PointResult guarded(const std::function<SeriesResult()>& f) {
  try {
    const SeriesResult r = f();
    return {r.last(), to_string(r.verdict)};
  } catch (const Error& e) {
    return {std::numeric_limits<double>::quiet_NaN(), std::string("error:") + to_string(e.kind())};
  }
}

int cmd_i2_sweep(SweepSpec s, const Common& c, std::ostream& out) {
  s.validate({"x", "rho"});
  Csv csv("i2-sweep");
  csv.comment("variable=" + s.variable + " start=" + num(s.start) + " stop=" + num(s.stop) +
              " steps=" + std::to_string(s.steps));
  csv.comment("fixed: x=" + num(s.x) + " rho=" + num(s.rho) + " n_terms=" + std::to_string(s.n_terms));
  csv.comment("cutoff: none (Matsubara series)");
  csv.row({"x", "rho", "beta_I2", "verdict"});
  const auto rows = parallel_map<PointResult>(s.steps, c.threads, [&](std::size_t i) {
    return guarded([&] { return i2_dimensionless(s.point(i, false), s.n_terms); });
  });
  for (std::size_t i = 0; i < s.steps; ++i) {
    const auto d = s.point(i, false);
    csv.row({num(d.x), num(d.rho), num(rows[i].value), rows[i].verdict});
  }
  csv.emit(c.out_path, out);
  return kOk;
}

int cmd_i1_drude_sweep(SweepSpec s, const std::string& form, const Common& c, std::ostream& out) {
  s.validate({"x", "rho", "sigma"});
  if (form != "published" && form != "poles") {
    throw Error(ErrorKind::InvalidParameter, "--form must be 'published' or 'poles'");
  }
  Csv csv("i1-drude-sweep");
  csv.comment("variable=" + s.variable + " start=" + num(s.start) + " stop=" + num(s.stop) +
              " steps=" + std::to_string(s.steps));
  csv.comment("fixed: x=" + num(s.x) + " rho=" + num(s.rho) + " sigma=" + num(s.sigma) +
              " n_terms=" + std::to_string(s.n_terms) + " form=" + form);
  csv.comment("cutoff: none (Matsubara series)");
  csv.row({"x", "rho", "sigma", "beta_I1", "verdict"});
  const auto rows = parallel_map<PointResult>(s.steps, c.threads, [&](std::size_t i) {
    return guarded([&] {
      const auto d = s.point(i, true);
      if (form == "published") return i1_drude_dimensionless(d, s.n_terms);
      auto [p, b] = from_dimensionless(d);
      SeriesResult r = i1_drude_matsubara_poles(p, b, s.n_terms);
      for (double& v : r.partial_sums) v *= p.beta();
      if (r.estimate) *r.estimate *= p.beta();
      return r;
    });
  });
  for (std::size_t i = 0; i < s.steps; ++i) {
    const auto d = s.point(i, true);
    csv.row({num(d.x), num(d.rho), num(*d.sigma), num(rows[i].value), rows[i].verdict});
  }
  csv.emit(c.out_path, out);
  return kOk;
}

// --- point commands -----------------------------------------------------------------

struct PointSpec {
  double x = 1.0;
  double rho = 2.5;
  std::optional<double> sigma;
  std::size_t n_terms = kDefaultTerms;
};

int cmd_i1_ohmic_diag(const PointSpec& ps, const Common& c, std::ostream& out) {
  auto [p, b] = from_dimensionless({ps.x, ps.rho, std::nullopt});
  const SeriesResult pub = i1_ohmic(p, ps.n_terms);
  const SeriesResult poles = i1_ohmic_matsubara_poles(p, ps.n_terms);
  const double cutoff = default_cutoff(p, b);
  const CutoffScan scan = cutoff_scan([&](double L) { return i1_integral(p, b, L); }, cutoff);
  const LinearFit fit_pub = fit_log_growth(pub.partial_sums, std::max<std::size_t>(1, ps.n_terms / 10), ps.n_terms);
  const LinearFit fit_poles =
      fit_log_growth(poles.partial_sums, std::max<std::size_t>(1, ps.n_terms / 10), ps.n_terms);

  Csv csv("i1-ohmic-diag");
  csv.comment("x=" + num(ps.x) + " rho=" + num(ps.rho) + " n_terms=" + std::to_string(ps.n_terms) +
              " units: m=hbar=kB=omega0=1");
  csv.comment("cutoff: " + num(scan.cutoffs.front()) + " doubled " + std::to_string(scan.slopes.size()) + " times");
  csv.comment("verdict_published=" + to_string(pub.verdict) + " verdict_poles=" + to_string(poles.verdict));
  csv.comment("log-divergent: slope_series=" + num(fit_pub.slope) + " r2=" + num(fit_pub.r_squared) +
              " slope_oracle=" + num(scan.mean_slope) + " slope_poles=" + num(fit_poles.slope) +
              " expected_magnitude=" + num(p.hbar * p.gamma / std::numbers::pi));
  csv.row({"n", "published_partial_sum", "poles_partial_sum"});
  for (std::size_t n = 1; n <= ps.n_terms; ++n) {
    csv.row({std::to_string(n), num(pub.partial_sums[n - 1]), num(poles.partial_sums[n - 1])});
  }
  csv.emit(c.out_path, out);
  return kOk;
}

struct CompareRow {
  std::string quantity;
  double series = 0.0, oracle = 0.0, rel = 0.0;
  std::optional<double> bar;  // diagnostic rows carry no bar
  std::string note;
};

double rel_diff(double a, double b, double scale = 0.0) {
  const double d = std::max(std::abs(b), scale);
  if (d == 0.0) return a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a - b) / d;
}

int cmd_oracle_compare(const std::string& which, const PointSpec& ps, std::optional<double> bar_opt, bool classical,
                       const Common& c, std::ostream& out) {
  std::vector<CompareRow> rows;
  const std::size_t N = ps.n_terms;
  if (which == "i2") {
    auto [p, b] = from_dimensionless({ps.x, ps.rho, std::nullopt});
    const SeriesResult s = i2_ohmic(p, N);
    const QuadratureResult q = i2_integral(p, b, default_cutoff(p, b));
    double scale = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
      scale += p.gamma * p.gamma / p.beta() * i2_first_piece_term(p, 2.0 * std::numbers::pi * n / (p.hbar * p.beta()));
    }
    const bool zero = q.value == 0.0;
    rows.push_back({"beta_I2", p.beta() * s.last(), p.beta() * q.value, rel_diff(s.last(), q.value, zero ? scale : 0.0),
                    bar_opt.value_or(1e-6), zero ? "oracle is exactly 0; difference relative to series term scale" : ""});
  } else if (which == "i1_drude") {
    if (!ps.sigma) throw Error(ErrorKind::InvalidParameter, "--sigma required for i1_drude");
    auto [p, b] = from_dimensionless({ps.x, ps.rho, ps.sigma});
    const QuadratureResult q = i1_integral(p, b, default_cutoff(p, b));
    const SeriesResult pub = i1_drude(p, b, N);
    const SeriesResult poles = i1_drude_matsubara_poles(p, b, N);
    rows.push_back({"beta_I1", p.beta() * pub.last(), p.beta() * q.value, rel_diff(pub.last(), q.value),
                    bar_opt.value_or(1e-4), "closed-form series"});
    rows.push_back({"beta_I1_poles", p.beta() * poles.last(), p.beta() * q.value, rel_diff(poles.last(), q.value),
                    std::nullopt, "diagnostic: residues at Matsubara poles, truncation O(1/n_terms)"});
  } else if (which == "i1_ohmic") {
    auto [p, b] = from_dimensionless({ps.x, ps.rho, std::nullopt});
    const SeriesResult pub = i1_ohmic(p, N);
    const LinearFit fit = fit_log_growth(pub.partial_sums, std::max<std::size_t>(1, N / 10), N);
    const CutoffScan scan = cutoff_scan([&](double L) { return i1_integral(p, b, L); }, default_cutoff(p, b));
    rows.push_back({"log-divergent: slope_series vs slope_oracle", fit.slope, scan.mean_slope,
                    rel_diff(fit.slope, scan.mean_slope), bar_opt.value_or(0.1), "slope per ln N vs per ln cutoff"});
  } else if (which == "EC" || which == "V") {
    CircuitParams cp;
    cp.L = 1.0;
    cp.C = 1.0;
    cp.R = ps.rho;
    cp.hbar = classical ? 0.0 : 1.0;
    cp.temperature = 1.0 / ps.x;  // kT in units of hbar omega0
    const OscillatorParams p = cp.to_oscillator();
    const BathSpec b = BathSpec::ohmic(p.gamma);
    const double cutoff = default_cutoff(p, b);
    const QuadratureResult ec = mean_energy_capacitor(cp, cutoff);
    const QuadratureResult v = position_variance(p, b, cutoff);
    if (which == "EC") {
      rows.push_back({"E_C vs oscillator <V>", ec.value, v.value, rel_diff(ec.value, v.value), bar_opt.value_or(1e-6),
                      "same integral after L->m, R/L->gamma"});
      if (classical) {
        rows.push_back({"E_C vs kT/2", ec.value, 0.5 * cp.kT(), rel_diff(ec.value, 0.5 * cp.kT()),
                        bar_opt.value_or(1e-6), "classical equipartition"});
      }
    } else {
      const double ref = classical ? 0.5 * cp.kT() : mean_energy_weak_coupling(p);
      rows.push_back({"<V> vs weak-coupling value", v.value, ref, rel_diff(v.value, ref), bar_opt.value_or(5e-3),
                      classical ? "kT/2" : "(hbar omega0/4) coth(hbar omega0/2kT); agreement needs small rho"});
    }
  } else {
    throw Error(ErrorKind::InvalidParameter, "--which must be one of i2, i1_drude, i1_ohmic, EC, V");
  }

  Csv csv("oracle-compare");
  csv.comment("which=" + which + " x=" + num(ps.x) + " rho=" + num(ps.rho) +
              (ps.sigma ? " sigma=" + num(*ps.sigma) : std::string()) + " n_terms=" + std::to_string(N) +
              (classical ? " hbar=0" : "") + " units: m=hbar=kB=omega0=1");
  csv.comment("cutoff: " + num(kOracleCutoffFactor) + " x max(omega0, gamma, omega_cut)");
  csv.row({"quantity", "series", "oracle", "rel_diff", "bar", "status", "note"});
  bool ok = true;
  for (const auto& r : rows) {
    std::string status = "diagnostic";
    if (r.bar) {
      const bool pass = r.rel <= *r.bar;
      ok = ok && pass;
      status = pass ? "pass" : "fail";
    }
    csv.row({r.quantity, num(r.series), num(r.oracle), num(r.rel), r.bar ? num(*r.bar) : "-", status, r.note});
  }
  csv.emit(c.out_path, out);
  return ok ? kOk : kComparisonFailed;
}

struct CircuitSpec {
  CircuitParams cp{1.0, 1.0, 0.5, 1.0, 1.0, 1.0};
  double cutoff = 0.0;  // 0: default
  double tol = kOracleDefaultTol;
  std::size_t n_terms = kDefaultTerms;
};

int cmd_circuit(const CircuitSpec& s, const Common& c, std::ostream& out) {
  s.cp.validate();
  const OscillatorParams p = s.cp.to_oscillator();
  double cutoff = s.cutoff;
  if (cutoff <= 0.0) {
    cutoff = s.cp.hbar > 0.0 ? default_cutoff(p, BathSpec::ohmic(p.gamma)) : std::numeric_limits<double>::infinity();
  }
  const QuadratureResult el = mean_energy_inductor(s.cp, cutoff, s.tol);
  const QuadratureResult ec = mean_energy_capacitor(s.cp, cutoff, s.tol);
  const QuadratureResult diff = energy_difference(s.cp, cutoff, s.tol);

  Csv csv("circuit");
  csv.comment("L=" + num(s.cp.L) + " C=" + num(s.cp.C) + " R=" + num(s.cp.R) + " T=" + num(s.cp.temperature) +
              " hbar=" + num(s.cp.hbar) + " kB=" + num(s.cp.kB) + " n_terms=" + std::to_string(s.n_terms));
  csv.comment("cutoff: " + num(cutoff) + " tol=" + num(s.tol));
  csv.row({"quantity", "value", "err", "cutoff", "note"});
  const std::string div = s.cp.hbar > 0.0 ? "log-divergent in cutoff" : "cutoff-stable";
  csv.row({"E_L", num(el.value), num(el.err), num(cutoff), div});
  csv.row({"E_C", num(ec.value), num(ec.err), num(cutoff), "cutoff-stable"});
  csv.row({"E_L-E_C integral", num(diff.value), num(diff.err), num(cutoff), div});
  if (s.cp.hbar > 0.0) {
    const SeriesResult ser = circuit_diff_series(s.cp, s.n_terms);
    const SeriesResult poles = circuit_diff_matsubara_poles(p, s.n_terms);
    csv.row({"E_L-E_C series", num(ser.last()), num(ser.err_estimate), "-",
             "partial sum at n_terms; " + to_string(ser.verdict)});
    csv.row({"E_L-E_C matsubara poles", num(poles.last()), num(poles.err_estimate), "-",
             "partial sum at n_terms; " + to_string(poles.verdict)});
  } else {
    csv.row({"E_L-E_C series", "0", "0", "-", "classical limit: every term vanishes"});
  }
  csv.emit(c.out_path, out);
  return kOk;
}

struct LangevinSpec {
  OscillatorParams p{1.0, 1.0, 0.5, 1.0, 0.0, 1.0};
  SdeConfig cfg;
  double Gamma = -1.0;  // < 0: default 2 mu kT
  std::string trajectory;
  bool check = false;
};

int cmd_langevin(LangevinSpec s, const Common& c, std::ostream& out, std::ostream& err) {
  if (s.Gamma >= 0.0) s.cfg.Gamma = s.Gamma;
  if (!s.trajectory.empty()) s.cfg.trajectory_csv = s.trajectory;
  s.cfg.validate(s.p);
  const TrajectoryStats st = simulate_brownian(s.p, s.cfg);
  const double G = s.cfg.gamma_noise(s.p);
  const double equip = s.p.mu() > 0.0 ? G / (4.0 * s.p.mu()) : std::numeric_limits<double>::quiet_NaN();
  const double m = s.p.m, k = m * s.p.omega0 * s.p.omega0;

  struct Line {
    std::string name;
    Estimate e;
    double expected;
  };
  const std::vector<Line> lines = {
      {"kinetic m<v^2>/2", {0.5 * m * st.mean_v2.mean, 0.5 * m * st.mean_v2.error}, equip},
      {"potential m omega0^2<x^2>/2", {0.5 * k * st.mean_x2.mean, 0.5 * k * st.mean_x2.error}, equip},
      {"<x v>", st.mean_xv, 0.0},
      {"<x F>", st.mean_xF, 0.0},
      {"virial residual", st.virial_residual, 0.0},
  };

  Csv csv("langevin");
  csv.comment("m=" + num(s.p.m) + " omega0=" + num(s.p.omega0) + " gamma=" + num(s.p.gamma) +
              " T=" + num(s.p.temperature) + " kB=" + num(s.p.kB) + " Gamma=" + num(G));
  csv.comment("dt=" + num(s.cfg.dt) + " n_steps=" + std::to_string(s.cfg.n_steps) +
              " n_burnin=" + std::to_string(s.cfg.n_burnin) + " seed=" + std::to_string(s.cfg.seed) +
              " batches=" + std::to_string(st.n_batches));
  csv.comment("cutoff: none");
  csv.row({"quantity", "mean", "stderr", "expected", "z"});
  bool ok = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const double z = l.e.error > 0.0 ? (l.e.mean - l.expected) / l.e.error : (l.e.mean == l.expected ? 0.0 : INFINITY);
    if (i < 3 && !(std::abs(z) <= 3.0)) ok = false;
    csv.row({l.name, num(l.e.mean), num(l.e.error), num(l.expected), num(z)});
  }
  csv.emit(c.out_path, out);
  if (s.check && !ok) {
    err << "check failed: equipartition or <x v> = 0 outside 3 standard errors\n";
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bath-induced virial corrections for a dissipative oscillator", "qvirial"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "TOML configuration; flags take precedence");
    sub->add_option("--out", common.out_path, "write CSV here instead of stdout");
    sub->add_option("--threads", common.threads, "worker threads (0: all cores)");
  };

  SweepSpec i2s;
  auto* i2 = app.add_subcommand("i2-sweep", "beta*I2 over a grid in x or rho (Ohmic bath)");
  const SweepOptions i2o = add_sweep_options(i2, i2s, false);
  add_common(i2);

  SweepSpec i1s;
  i1s.start = 0.5;
  i1s.stop = 3.0;
  i1s.steps = 26;
  i1s.rho = 2.1;
  std::string i1_form = "published";
  auto* i1 = app.add_subcommand("i1-drude-sweep", "beta*I1 over a grid in x, rho or sigma (Drude bath)");
  const SweepOptions i1o = add_sweep_options(i1, i1s, true);
  auto* i1_form_opt = i1->add_option("--form", i1_form, "series form: published | poles")->capture_default_str();
  add_common(i1);

  PointSpec od;
  auto* diag = app.add_subcommand("i1-ohmic-diag", "partial sums and log-slopes of the Ohmic I1 series");
  auto* od_x = diag->add_option("--x", od.x, "x = hbar beta omega0")->capture_default_str();
  auto* od_rho = diag->add_option("--rho", od.rho, "rho = gamma/omega0")->capture_default_str();
  auto* od_n = diag->add_option("--n-terms", od.n_terms, "series truncation")->capture_default_str();
  add_common(diag);

  CircuitSpec cs;
  auto* circ = app.add_subcommand("circuit", "mean inductor and capacitor energies of a noisy LCR circuit");
  auto* c_L = circ->add_option("--L", cs.cp.L, "inductance")->capture_default_str();
  auto* c_C = circ->add_option("--C", cs.cp.C, "capacitance")->capture_default_str();
  auto* c_R = circ->add_option("--R", cs.cp.R, "resistance")->capture_default_str();
  auto* c_T = circ->add_option("--T", cs.cp.temperature, "temperature")->capture_default_str();
  auto* c_hbar = circ->add_option("--hbar", cs.cp.hbar, "reduced Planck constant (0: classical)")->capture_default_str();
  auto* c_kB = circ->add_option("--kB", cs.cp.kB, "Boltzmann constant")->capture_default_str();
  auto* c_cut = circ->add_option("--cutoff", cs.cutoff, "frequency cutoff (default 1e4 x max scale; infinite when hbar = 0)");
  auto* c_tol = circ->add_option("--tol", cs.tol, "absolute tolerance in units of kT")->capture_default_str();
  auto* c_n = circ->add_option("--n-terms", cs.n_terms, "series truncation")->capture_default_str();
  add_common(circ);

  PointSpec oc;
  oc.rho = 0.75;
  oc.x = 2.0;
  std::string which;
  double bar = -1.0;
  double oc_sigma = -1.0;
  bool classical = false;
  auto* cmp = app.add_subcommand("oracle-compare", "series against quadrature at one parameter point");
  cmp->add_option("--which", which, "i2 | i1_drude | i1_ohmic | EC | V")->required();
  auto* oc_x = cmp->add_option("--x", oc.x, "x = hbar beta omega0")->capture_default_str();
  auto* oc_rho = cmp->add_option("--rho", oc.rho, "rho = gamma/omega0")->capture_default_str();
  auto* oc_sig = cmp->add_option("--sigma", oc_sigma, "sigma = omega_cut/omega0 (Drude)");
  auto* oc_n = cmp->add_option("--n-terms", oc.n_terms, "series truncation")->capture_default_str();
  cmp->add_option("--bar", bar, "relative-difference bar (default per quantity)");
  cmp->add_flag("--classical", classical, "hbar = 0 for EC and V");
  add_common(cmp);

  LangevinSpec ls;
  ls.cfg.n_steps = 2'000'000;
  auto* lan = app.add_subcommand("langevin", "classical Brownian oscillator run with batch-means statistics");
  auto* l_m = lan->add_option("--m", ls.p.m, "mass")->capture_default_str();
  auto* l_w0 = lan->add_option("--omega0", ls.p.omega0, "natural frequency")->capture_default_str();
  auto* l_g = lan->add_option("--gamma", ls.p.gamma, "damping rate")->capture_default_str();
  auto* l_T = lan->add_option("--T", ls.p.temperature, "temperature")->capture_default_str();
  auto* l_kB = lan->add_option("--kB", ls.p.kB, "Boltzmann constant")->capture_default_str();
  auto* l_dt = lan->add_option("--dt", ls.cfg.dt, "time step")->capture_default_str();
  auto* l_n = lan->add_option("--steps", ls.cfg.n_steps, "total steps")->capture_default_str();
  auto* l_b = lan->add_option("--burnin", ls.cfg.n_burnin, "discarded steps")->capture_default_str();
  auto* l_seed = lan->add_option("--seed", ls.cfg.seed, "RNG seed")->capture_default_str();
  auto* l_G = lan->add_option("--Gamma", ls.Gamma, "noise intensity (default 2 mu kT)");
  auto* l_x0 = lan->add_option("--x0", ls.cfg.x0, "initial position")->capture_default_str();
  auto* l_v0 = lan->add_option("--v0", ls.cfg.v0, "initial velocity")->capture_default_str();
  lan->add_option("--trajectory", ls.trajectory, "write t,x,v rows to this CSV");
  lan->add_option("--stride", ls.cfg.record_stride, "trajectory row stride");
  lan->add_flag("--check", ls.check, "exit 4 unless equipartition and <x v> = 0 hold at 3 sigma");
  add_common(lan);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (!common.config_path.empty()) common.cfg = ConfigTable::load(common.config_path);
    const ConfigTable& cfg = common.cfg;

    if (i2->parsed()) {
      merge_sweep(i2o, i2s, cfg);
      return cmd_i2_sweep(i2s, common, out);
    }
    if (i1->parsed()) {
      merge_sweep(i1o, i1s, cfg);
      (void)i1_form_opt;
      return cmd_i1_drude_sweep(i1s, i1_form, common, out);
    }
    if (diag->parsed()) {
      from_config(od_x, od.x, cfg, "sweep.x");
      from_config(od_rho, od.rho, cfg, "sweep.rho");
      from_config(od_n, od.n_terms, cfg, "series.n_terms");
      return cmd_i1_ohmic_diag(od, common, out);
    }
    if (circ->parsed()) {
      from_config(c_L, cs.cp.L, cfg, "circuit.L");
      from_config(c_C, cs.cp.C, cfg, "circuit.C");
      from_config(c_R, cs.cp.R, cfg, "circuit.R");
      from_config(c_T, cs.cp.temperature, cfg, "circuit.T");
      from_config(c_hbar, cs.cp.hbar, cfg, "circuit.hbar");
      from_config(c_kB, cs.cp.kB, cfg, "circuit.kB");
      from_config(c_cut, cs.cutoff, cfg, "quadrature.cutoff");
      from_config(c_tol, cs.tol, cfg, "quadrature.tol");
      from_config(c_n, cs.n_terms, cfg, "series.n_terms");
      return cmd_circuit(cs, common, out);
    }
    if (cmp->parsed()) {
      from_config(oc_x, oc.x, cfg, "sweep.x");
      from_config(oc_rho, oc.rho, cfg, "sweep.rho");
      from_config(oc_sig, oc_sigma, cfg, "sweep.sigma");
      from_config(oc_n, oc.n_terms, cfg, "series.n_terms");
      if (oc_sigma > 0.0) oc.sigma = oc_sigma;
      return cmd_oracle_compare(which, oc, bar > 0.0 ? std::optional<double>(bar) : std::nullopt, classical, common,
                                out);
    }
    if (lan->parsed()) {
      ls.p = oscillator_from(cfg, ls.p);
      // explicit flags override the [oscillator] block
      for (auto [opt, field] : std::vector<std::pair<CLI::Option*, double*>>{
               {l_m, &ls.p.m}, {l_w0, &ls.p.omega0}, {l_g, &ls.p.gamma}, {l_T, &ls.p.temperature}, {l_kB, &ls.p.kB}}) {
        if (opt->count() > 0) *field = opt->as<double>();
      }
      ls.p.hbar = 0.0;
      from_config(l_dt, ls.cfg.dt, cfg, "langevin.dt");
      from_config(l_n, ls.cfg.n_steps, cfg, "langevin.n_steps");
      from_config(l_b, ls.cfg.n_burnin, cfg, "langevin.n_burnin");
      if (l_seed->count() == 0) {
        if (auto v = cfg.number("langevin.seed")) ls.cfg.seed = static_cast<std::uint64_t>(*v);
      }
      from_config(l_G, ls.Gamma, cfg, "langevin.Gamma");
      from_config(l_x0, ls.cfg.x0, cfg, "langevin.x0");
      from_config(l_v0, ls.cfg.v0, cfg, "langevin.v0");
      return cmd_langevin(ls, common, out, err);
    }
  } catch (const Error& e) {
    err << "qvirial: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "qvirial: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace qvirial::cli
