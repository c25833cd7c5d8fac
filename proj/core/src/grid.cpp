#include "fmlab/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

namespace fmlab {

namespace {

// FFTW planning (and plan destruction) is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// unnormalized in-place transform of buf, sign = FFTW_FORWARD/BACKWARD
void raw_fft(std::vector<cplx>& buf, int sign) {
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(buf.size()), data, data, sign,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (!plan) throw std::runtime_error("fft planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

GridConfig make_config(int L, double h) {
  if (L < 1 || L > 26) throw std::invalid_argument("grid level L must be in [1, 26]");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid spacing must be positive");
  return GridConfig{L, h};
}

GridSignal make_signal(GridConfig config, std::size_t channels, double origin) {
  if (channels == 0) throw std::invalid_argument("signal needs at least one channel");
  GridSignal f;
  f.config = config;
  f.channels = channels;
  f.origin = origin;
  f.values.assign(channels * config.n(), cplx{0.0, 0.0});
  return f;
}

Spectrum make_spectrum(GridConfig config, std::size_t channels, double origin) {
  if (channels == 0) throw std::invalid_argument("spectrum needs at least one channel");
  Spectrum s;
  s.config = config;
  s.channels = channels;
  s.origin = origin;
  s.values.assign(channels * config.n(), cplx{0.0, 0.0});
  return s;
}

std::size_t Spectrum::index_of_k(long k) const {
  long half = static_cast<long>(n() / 2);
  if (k < -half || k >= half) throw std::out_of_range("integer frequency outside band");
  return static_cast<std::size_t>(k + half);
}

Spectrum dft(const GridSignal& f) {
  const std::size_t n = f.n();
  const std::size_t half = n / 2;
  const double two_pi = 2.0 * std::numbers::pi;
  Spectrum out = make_spectrum(f.config, f.channels, f.origin);
  std::vector<cplx> buf(n);
  for (std::size_t c = 0; c < f.channels; ++c) {
    std::memcpy(buf.data(), f.values.data() + c * n, n * sizeof(cplx));
    raw_fft(buf, FFTW_FORWARD);
    // buf[m] = sum_j f_j e^{-2 pi i m j / n}; shift to k = i - n/2 order and
    // attach the spacing weight plus the origin phase e^{-2 pi i k x0 / T}.
    for (std::size_t i = 0; i < n; ++i) {
      long k = static_cast<long>(i) - static_cast<long>(half);
      std::size_t m = static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
      double phase = -two_pi * static_cast<double>(k) * f.origin / f.config.T();
      out.values[c * n + i] = f.config.h * std::polar(1.0, phase) * buf[m];
    }
  }
  return out;
}

GridSignal idft(const Spectrum& s) {
  const std::size_t n = s.n();
  const std::size_t half = n / 2;
  const double two_pi = 2.0 * std::numbers::pi;
  GridSignal out = make_signal(s.config, s.channels, s.origin);
  std::vector<cplx> buf(n);
  for (std::size_t c = 0; c < s.channels; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      long k = static_cast<long>(i) - static_cast<long>(half);
      std::size_t m = static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
      double phase = two_pi * static_cast<double>(k) * s.origin / s.config.T();
      buf[m] = std::polar(1.0, phase) * s.values[c * n + i];
    }
    raw_fft(buf, FFTW_BACKWARD);
    const double scale = 1.0 / s.config.T();
    for (std::size_t j = 0; j < n; ++j) out.values[c * n + j] = scale * buf[j];
  }
  return out;
}

GridSignal convolve(const GridSignal& f, const GridSignal& g) {
  if (!(f.config == g.config)) throw std::invalid_argument("convolve needs matching grids");
  if (g.channels != 1 && g.channels != f.channels)
    throw std::invalid_argument("convolve needs one kernel channel or one per signal channel");
  Spectrum fs = dft(f);
  const Spectrum gs = dft(g);
  const std::size_t n = f.n();
  for (std::size_t c = 0; c < f.channels; ++c) {
    const std::size_t gc = g.channels == 1 ? 0 : c;
    for (std::size_t i = 0; i < n; ++i) fs.values[c * n + i] *= gs.values[gc * n + i];
  }
  return idft(fs);
}

GridSignal magnitude_l2(const GridSignal& f) {
  const std::size_t n = f.n();
  GridSignal out = make_signal(f.config, 1, f.origin);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t c = 0; c < f.channels; ++c) acc += std::norm(f.values[c * n + j]);
    out.values[j] = std::sqrt(acc);
  }
  return out;
}

double lp_norm(const GridSignal& f, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm needs p > 0");
  if (std::isinf(p)) return sup_norm(f);
  const std::size_t n = f.n();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double mag2 = 0.0;
    for (std::size_t c = 0; c < f.channels; ++c) mag2 += std::norm(f.values[c * n + j]);
    acc += std::pow(mag2, 0.5 * p);
  }
  return std::pow(f.config.h * acc, 1.0 / p);
}

double sup_norm(const GridSignal& f) {
  const std::size_t n = f.n();
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double mag2 = 0.0;
    for (std::size_t c = 0; c < f.channels; ++c) mag2 += std::norm(f.values[c * n + j]);
    best = std::max(best, mag2);
  }
  return std::sqrt(best);
}

double l2_norm_sq(const Spectrum& s) {
  double acc = 0.0;
  for (const auto& v : s.values) acc += std::norm(v);
  return acc / s.config.T();
}

}  // namespace fmlab
