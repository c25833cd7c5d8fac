#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fmlab {

using cplx = std::complex<double>;

// Dyadic sampling grid: n = 2^L samples at spacing h, periodized with
// period T = n*h.  Frequencies live on the dual grid k/T, k in [-n/2, n/2).
struct GridConfig {
  int L = 0;        // log2 of the sample count
  double h = 1.0;   // sample spacing

  std::size_t n() const { return std::size_t{1} << L; }
  double T() const { return static_cast<double>(n()) * h; }
  double freq_spacing() const { return 1.0 / T(); }
  // largest magnitude representable frequency (half the sampling rate)
  double max_freq() const { return 0.5 / h; }

  bool operator==(const GridConfig& o) const { return L == o.L && h == o.h; }
};

GridConfig make_config(int L, double h);

// Sampled function on the torus [origin, origin+T).  Multi-channel signals
// store their samples row-major, channel by channel.
struct GridSignal {
  GridConfig config;
  std::size_t channels = 1;
  double origin = 0.0;
  std::vector<cplx> values;

  std::size_t n() const { return config.n(); }
  cplx& at(std::size_t c, std::size_t j) { return values[c * n() + j]; }
  const cplx& at(std::size_t c, std::size_t j) const { return values[c * n() + j]; }
  double coordinate(std::size_t j) const { return origin + static_cast<double>(j) * config.h; }
  // offset from the origin folded into (-T/2, T/2]
  double signed_offset(std::size_t j) const {
    auto half = n() / 2;
    return (j <= half ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n())) * config.h;
  }
};

GridSignal make_signal(GridConfig config, std::size_t channels = 1, double origin = 0.0);

// Discrete Fourier data on the dual grid.  Storage index i corresponds to
// integer frequency k = i - n/2, i.e. physical frequency (i - n/2)/T.
struct Spectrum {
  GridConfig config;
  std::size_t channels = 1;
  double origin = 0.0;  // origin of the spatial grid it came from
  std::vector<cplx> values;

  std::size_t n() const { return config.n(); }
  cplx& at(std::size_t c, std::size_t i) { return values[c * n() + i]; }
  const cplx& at(std::size_t c, std::size_t i) const { return values[c * n() + i]; }
  long k_of_index(std::size_t i) const { return static_cast<long>(i) - static_cast<long>(n() / 2); }
  double frequency(std::size_t i) const { return static_cast<double>(k_of_index(i)) / config.T(); }
  // storage index of integer frequency k (throws if out of band)
  std::size_t index_of_k(long k) const;
};

Spectrum make_spectrum(GridConfig config, std::size_t channels = 1, double origin = 0.0);

// Riemann-sum transform pair:
//   dft:  f^(xi_k) = h * sum_x f(x) e^{-2 pi i xi_k x}
//   idft: f(x)     = (1/T) * sum_k f^(xi_k) e^{+2 pi i xi_k x}
// idft(dft(f)) reproduces f to roundoff.
Spectrum dft(const GridSignal& f);
GridSignal idft(const Spectrum& s);

// periodic convolution (f*g)(x) = h sum_y f(y) g(x-y), computed spectrally.
// g must have one channel (applied to every channel of f) or match f.
GridSignal convolve(const GridSignal& f, const GridSignal& g);

// pointwise channel-l2 magnitude, returned as a real-valued single channel
GridSignal magnitude_l2(const GridSignal& f);

// h * sum_j |f(x_j)|_{l2}^p, p-th root; p = inf handled by sup_norm
double lp_norm(const GridSignal& f, double p);
double sup_norm(const GridSignal& f);
// (1/T) * sum_k |s_k|^2 summed over channels (equals lp_norm(f,2)^2 by Parseval)
double l2_norm_sq(const Spectrum& s);

}  // namespace fmlab
