#include "qvirial/langevin.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>

#include "qvirial/error.hpp"
#include "qvirial/summation.hpp"

namespace qvirial {

double SdeConfig::gamma_noise(const OscillatorParams& p) const {
  return Gamma ? *Gamma : 2.0 * p.mu() * p.kT();
}

void SdeConfig::validate(const OscillatorParams& p) const {
  p.validate();
  if (!(std::isfinite(dt) && dt > 0.0)) throw Error(ErrorKind::InvalidParameter, "dt must be > 0");
  if (!(n_steps > n_burnin)) throw Error(ErrorKind::InvalidParameter, "n_steps must exceed n_burnin");
  if (noise_substeps < 1) throw Error(ErrorKind::InvalidParameter, "noise_substeps must be >= 1");
  if (n_batches < 2) throw Error(ErrorKind::InvalidParameter, "need at least 2 batches");
  if (n_steps - n_burnin < n_batches) throw Error(ErrorKind::InvalidParameter, "fewer samples than batches");
  if (Gamma && !(std::isfinite(*Gamma) && *Gamma >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "Gamma must be >= 0");
  }
  if (!(dt * std::max(p.gamma, p.omega0) < kStabilityLimit)) {
    throw Error(ErrorKind::UnstableStep, "dt * max(gamma, omega0) must be < 0.1");
  }
}

namespace {

class BatchMeans {
 public:
  BatchMeans(std::size_t n_batches, std::size_t batch_size) : sums_(n_batches), batch_size_(batch_size) {}

  void add(std::size_t sample_index, double v) {
    const std::size_t b = sample_index / batch_size_;
    if (b < sums_.size()) sums_[b].add(v);
  }

  Estimate estimate() const {
    const double nb = static_cast<double>(sums_.size());
    std::vector<double> means;
    CompensatedSum total;
    for (const auto& s : sums_) {
      means.push_back(s.value() / static_cast<double>(batch_size_));
      total.add(means.back());
    }
    const double mean = total.value() / nb;
    double ss = 0.0;
    for (double m : means) ss += (m - mean) * (m - mean);
    return {mean, std::sqrt(ss / (nb - 1.0) / nb)};
  }

 private:
  std::vector<CompensatedSum> sums_;
  std::size_t batch_size_;
};

}  // namespace

TrajectoryStats simulate_brownian(const OscillatorParams& p, const SdeConfig& cfg) {
  cfg.validate(p);
  const double h = cfg.dt;
  const double w02 = p.omega0 * p.omega0;
  const double G = cfg.gamma_noise(p);
  const double c = std::exp(-p.gamma * h);
  // Var of the OU velocity kick: G/m^2 * (1 - c^2)/(2 gamma), -> G h/m^2 as gamma -> 0
  const double kick_var = p.gamma > 0.0 ? -std::expm1(-2.0 * p.gamma * h) / (2.0 * p.gamma) : h;
  const double s = std::sqrt(G * kick_var) / p.m;
  const double merge = 1.0 / std::sqrt(static_cast<double>(cfg.noise_substeps));

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const std::size_t n_samples = cfg.n_steps - cfg.n_burnin;
  const std::size_t batch = n_samples / cfg.n_batches;
  BatchMeans bx2(cfg.n_batches, batch), bv2(cfg.n_batches, batch), bxv(cfg.n_batches, batch),
      bxf(cfg.n_batches, batch), bres(cfg.n_batches, batch);

  TrajectoryStats out;
  const std::size_t stride = cfg.record_stride;
  const std::size_t csv_stride = stride > 0 ? stride : 1;
  std::unique_ptr<std::ofstream> csv;
  if (cfg.trajectory_csv) {
    csv = std::make_unique<std::ofstream>(*cfg.trajectory_csv);
    if (!*csv) throw Error(ErrorKind::InvalidParameter, "cannot open " + *cfg.trajectory_csv);
    *csv << "t,x,v\n";
  }
  if (stride > 0) {
    out.sample_dt = h * static_cast<double>(stride);
    out.x.reserve(n_samples / stride + 1);
    out.v.reserve(n_samples / stride + 1);
    out.force.reserve(n_samples / stride + 1);
  }

  double x = cfg.x0, v = cfg.v0;
  double impulse_window = 0.0;
  char buf[96];
  for (std::size_t step = 0; step < cfg.n_steps; ++step) {
    v -= 0.5 * h * w02 * x;
    x += 0.5 * h * v;
    double xi = 0.0;
    for (std::size_t k = 0; k < cfg.noise_substeps; ++k) xi += normal(rng);
    xi *= merge;
    const double x_mid = x;
    const double kick = s * xi;
    v = c * v + kick;
    const double impulse = p.m * kick;
    x += 0.5 * h * v;
    v -= 0.5 * h * w02 * x;

    if (step < cfg.n_burnin) continue;
    const std::size_t i = step - cfg.n_burnin;
    const double xF = x_mid * impulse / h;
    bx2.add(i, x * x);
    bv2.add(i, v * v);
    bxv.add(i, x * v);
    bxf.add(i, xF);
    bres.add(i, p.m * v * v - p.m * w02 * x * x - p.mu() * x * v + xF);

    impulse_window += impulse;
    if (stride > 0 && (i + 1) % stride == 0) {
      out.x.push_back(x);
      out.v.push_back(v);
      out.force.push_back(impulse_window / out.sample_dt);
      impulse_window = 0.0;
    }
    if (csv && i % csv_stride == 0) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", static_cast<double>(step + 1) * h, x, v);
      *csv << buf;
    }
  }

  out.mean_x2 = bx2.estimate();
  out.mean_v2 = bv2.estimate();
  out.mean_xv = bxv.estimate();
  out.mean_xF = bxf.estimate();
  out.virial_residual = bres.estimate();
  out.n_samples = batch * cfg.n_batches;
  out.n_batches = cfg.n_batches;
  return out;
}

// --- damped oscillator ---------------------------------------------------------

namespace {

using cd = std::complex<double>;

// int_0^T t^k e^{s t} dt for k = 0, 1, 2
std::array<cd, 3> moment_integrals(cd s, double T) {
  std::array<cd, 3> I{};
  if (std::abs(s) * T < 1e-8) {
    I[0] = T + s * T * T / 2.0;
    I[1] = T * T / 2.0 + s * T * T * T / 3.0;
    I[2] = T * T * T / 3.0 + s * T * T * T * T / 4.0;
    return I;
  }
  const cd e = std::exp(s * T);
  I[0] = (e - 1.0) / s;
  I[1] = (T * e - I[0]) / s;
  I[2] = (T * T * e - 2.0 * I[1]) / s;
  return I;
}

}  // namespace

DampedVirial damped_oscillator_virial(double m, double mu, double k, double x0, double v0, double T) {
  if (!(m > 0.0) || !(k > 0.0) || !(mu >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "need m > 0, k > 0, mu >= 0");
  }
  if (!(T > 0.0)) throw Error(ErrorKind::InvalidParameter, "averaging window must be > 0");
  const double g = mu / m;
  const double w0 = std::sqrt(k / m);
  OscillatorParams probe;
  probe.m = m;
  probe.omega0 = w0;
  probe.gamma = g;

  double ix2 = 0.0, iv2 = 0.0, ixv = 0.0, xT = 0.0, vT = 0.0;
  double slow = 0.0;
  if (classify_regime(probe) == DampingRegime::CriticallyDamped) {
    // x = (a + b t) e^{l t}
    const double l = -0.5 * g;
    const double a = x0, b = v0 - l * x0;
    const auto I = moment_integrals(2.0 * l, T);
    const double p0 = b + l * a, p1 = l * b;  // v = (p0 + p1 t) e^{l t}
    ix2 = (a * a * I[0] + 2.0 * a * b * I[1] + b * b * I[2]).real();
    iv2 = (p0 * p0 * I[0] + 2.0 * p0 * p1 * I[1] + p1 * p1 * I[2]).real();
    ixv = (a * p0 * I[0] + (a * p1 + b * p0) * I[1] + b * p1 * I[2]).real();
    const double e = std::exp(l * T);
    xT = (a + b * T) * e;
    vT = (p0 + p1 * T) * e;
    slow = l;
  } else {
    const cd r = std::sqrt(cd(0.25 * g * g - w0 * w0, 0.0));
    const cd lp = -0.5 * g + r, lm = -0.5 * g - r;
    const cd A = (v0 - lm * x0) / (lp - lm);
    const cd B = x0 - A;
    const cd ipp = moment_integrals(2.0 * lp, T)[0];
    const cd ipm = moment_integrals(lp + lm, T)[0];
    const cd imm = moment_integrals(2.0 * lm, T)[0];
    ix2 = (A * A * ipp + 2.0 * A * B * ipm + B * B * imm).real();
    iv2 = (A * A * lp * lp * ipp + 2.0 * A * B * lp * lm * ipm + B * B * lm * lm * imm).real();
    ixv = (A * A * lp * ipp + A * B * (lp + lm) * ipm + B * B * lm * imm).real();
    const cd ep = std::exp(lp * T), em = std::exp(lm * T);
    xT = (A * ep + B * em).real();
    vT = (A * lp * ep + B * lm * em).real();
    slow = std::max(lp.real(), lm.real());
  }

  DampedVirial out;
  out.mean_xv = ixv / T;
  out.lhs = m * iv2 / T;
  out.rhs = k * ix2 / T + mu * out.mean_xv;
  out.difference = out.lhs - out.rhs;
  out.boundary = m * (xT * vT - x0 * v0) / T;
  out.decay_rate = 2.0 * slow;
  return out;
}

}  // namespace qvirial
