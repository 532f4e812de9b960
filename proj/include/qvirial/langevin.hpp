#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qvirial/params.hpp"

namespace qvirial {

inline constexpr double kStabilityLimit = 0.1;
inline constexpr std::size_t kDefaultBatches = 64;

/// Settings of a single-trajectory Brownian oscillator run.
struct SdeConfig {
  double dt = 0.01;
  std::size_t n_steps = 1'000'000;
  std::size_t n_burnin = 10'000;
  std::uint64_t seed = 42;
  std::optional<double> Gamma;  ///< noise intensity; defaults to 2 mu kT
  double x0 = 0.0;
  double v0 = 0.0;
  /// Normal deviates drawn per step and merged into one. A run with
  /// noise_substeps = 2 shares its random stream with a run at dt/2, which
  /// couples the two for step-size comparisons.
  std::size_t noise_substeps = 1;
  std::size_t n_batches = kDefaultBatches;
  /// Keep every record_stride-th post-burn-in sample of x, v and F (0: none).
  std::size_t record_stride = 0;
  /// Write (t, x, v) rows at record_stride (1 if unset) to this CSV path.
  std::optional<std::string> trajectory_csv;

  double gamma_noise(const OscillatorParams& p) const;
  /// Throws InvalidParameter for bad settings and UnstableStep when
  /// dt * max(gamma, omega0) >= 0.1.
  void validate(const OscillatorParams& p) const;
};

struct Estimate {
  double mean = 0.0;
  double error = 0.0;  ///< batch-means standard error
};

struct TrajectoryStats {
  Estimate mean_x2;
  Estimate mean_v2;
  Estimate mean_xv;
  Estimate mean_xF;  ///< position times noise force
  /// m<v^2> - m omega0^2 <x^2> - mu <xv> + <xF>, estimated per sample.
  Estimate virial_residual;
  std::size_t n_samples = 0;
  std::size_t n_batches = 0;

  /// Sampled post-burn-in series when record_stride > 0.
  double sample_dt = 0.0;
  std::vector<double> x;
  std::vector<double> v;
  std::vector<double> force;  ///< mean noise force over the step
};

/// Integrates m x'' + mu x' + m omega0^2 x = F(t), <F(t)F(t')> = Gamma delta(t - t'),
/// with a BAOAB splitting whose friction-plus-noise part is the exact
/// Ornstein-Uhlenbeck update. Returns post-burn-in time averages.
TrajectoryStats simulate_brownian(const OscillatorParams& p, const SdeConfig& cfg);

struct DampedVirial {
  double lhs = 0.0;          ///< <m v^2>_T
  double rhs = 0.0;          ///< <k x^2>_T + mu <x v>_T
  double mean_xv = 0.0;      ///< <x v>_T
  double difference = 0.0;   ///< lhs - rhs
  double boundary = 0.0;     ///< m (x(T) v(T) - x0 v0) / T
  double decay_rate = 0.0;   ///< 2 Re(lambda) of the slowest mode
};

/// Time averages over [0, T] of the free damped oscillator m x'' + mu x' + k x = 0,
/// integrated in closed form from x(t) = A e^{l+ t} + B e^{l- t}.
DampedVirial damped_oscillator_virial(double m, double mu, double k, double x0, double v0, double T);

}  // namespace qvirial
