#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "fmlab/grid.hpp"

namespace fmlab::testing {

// quadratic-time transform straight from the definition; the reference the
// fast path is judged against
inline Spectrum brute_dft(const GridSignal& f) {
  Spectrum s = make_spectrum(f.config, f.channels, f.origin);
  const std::size_t n = f.n();
  for (std::size_t c = 0; c < f.channels; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = s.frequency(i);
      cplx acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double x = f.coordinate(j);
        acc += f.at(c, j) * std::polar(1.0, -2.0 * std::numbers::pi * xi * x);
      }
      s.at(c, i) = f.config.h * acc;
    }
  }
  return s;
}

inline GridSignal brute_idft(const Spectrum& s) {
  GridSignal f = make_signal(s.config, s.channels, s.origin);
  const std::size_t n = s.n();
  for (std::size_t c = 0; c < s.channels; ++c) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = f.coordinate(j);
      cplx acc = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        acc += s.at(c, i) * std::polar(1.0, 2.0 * std::numbers::pi * s.frequency(i) * x);
      f.at(c, j) = acc / s.config.T();
    }
  }
  return f;
}

// periodic (f*g)(x_i) = h sum_j f(x_j) g((i-j) h), g sampled from origin 0
inline GridSignal brute_convolve(const GridSignal& f, const GridSignal& g) {
  GridSignal out = make_signal(f.config, f.channels, f.origin);
  const std::size_t n = f.n();
  for (std::size_t c = 0; c < f.channels; ++c) {
    const std::size_t gc = g.channels == 1 ? 0 : c;
    for (std::size_t i = 0; i < n; ++i) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        acc += f.at(c, j) * g.at(gc, (i + n - j) % n);
      out.at(c, i) = f.config.h * acc;
    }
  }
  return out;
}

inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline GridSignal random_signal(const GridConfig& config, std::size_t channels,
                                std::mt19937_64& rng, double origin = 0.0) {
  GridSignal f = make_signal(config, channels, origin);
  for (auto& v : f.values) v = cplx{2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0};
  return f;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace fmlab::testing
