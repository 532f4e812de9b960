#include "qvirial/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "qvirial/error.hpp"

namespace qvirial {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW planning is not thread-safe; execution is.
std::mutex plan_mutex;

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

PowerSpectrum estimate_spectrum(const std::vector<double>& samples, double dt, std::size_t segment_length) {
  if (samples.size() < (std::size_t{1} << 14)) {
    throw Error(ErrorKind::InvalidParameter, "spectrum estimation needs at least 2^14 samples");
  }
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidParameter, "dt must be > 0");
  if (segment_length < 16 || segment_length > samples.size() || segment_length % 2 != 0) {
    throw Error(ErrorKind::InvalidParameter, "segment length must be even and fit the series");
  }
  const std::size_t N = segment_length;
  const std::size_t n_bins = N / 2 + 1;

  std::vector<double> window(N);
  double u = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    window[n] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(n) / static_cast<double>(N));
    u += window[n] * window[n];
  }
  u /= static_cast<double>(N);

  std::unique_ptr<double, FftwDeleter> in(static_cast<double*>(fftw_malloc(sizeof(double) * N)));
  std::unique_ptr<fftw_complex, FftwDeleter> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_bins)));
  fftw_plan plan;
  {
    std::lock_guard lock(plan_mutex);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(N), in.get(), out.get(), FFTW_ESTIMATE);
  }

  PowerSpectrum s;
  s.d_omega = 2.0 * kPi / (static_cast<double>(N) * dt);
  s.omega.resize(n_bins);
  s.power.assign(n_bins, 0.0);
  for (std::size_t k = 0; k < n_bins; ++k) s.omega[k] = s.d_omega * static_cast<double>(k);

  const std::size_t hop = N / 2;
  for (std::size_t start = 0; start + N <= samples.size(); start += hop) {
    for (std::size_t n = 0; n < N; ++n) in.get()[n] = window[n] * samples[start + n];
    fftw_execute(plan);
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double re = out.get()[k][0], im = out.get()[k][1];
      s.power[k] += re * re + im * im;
    }
    ++s.n_segments;
  }
  {
    std::lock_guard lock(plan_mutex);
    fftw_destroy_plan(plan);
  }

  const double norm = dt / (static_cast<double>(N) * u * static_cast<double>(s.n_segments));
  for (double& v : s.power) v *= norm;
  return s;
}

double spectrum_mean_square(const PowerSpectrum& s) {
  if (s.power.size() < 2) return 0.0;
  double total = s.power.front() + s.power.back();
  for (std::size_t k = 1; k + 1 < s.power.size(); ++k) total += 2.0 * s.power[k];
  return total * s.d_omega / (2.0 * kPi);
}

double analytic_position_spectrum(const OscillatorParams& p, double Gamma, double omega) {
  const double d = p.omega0 * p.omega0 - omega * omega;
  return Gamma / (p.m * p.m * (d * d + p.gamma * p.gamma * omega * omega));
}

double damped_resonance(const OscillatorParams& p) {
  const double s = p.omega0 * p.omega0 - 0.5 * p.gamma * p.gamma;
  return s > 0.0 ? std::sqrt(s) : 0.0;
}

}  // namespace qvirial
