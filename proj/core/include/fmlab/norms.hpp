#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "fmlab/grid.hpp"

namespace fmlab {

// half-open coordinate window [lo, hi)
struct Region {
  double lo = 0.0;
  double hi = 0.0;
};

struct LorentzParams {
  double p = 1.0;
  double q = 1.0;  // infinity allowed
};

struct OrliczParams {
  double r = 0.0;
  std::optional<Region> domain;
};

// |f| sorted descending, one (value, measure=h) step per retained sample;
// multi-channel signals are reduced to the pointwise channel-l2 magnitude
std::vector<std::pair<double, double>> decreasing_rearrangement(
    const GridSignal& f, std::optional<Region> region = std::nullopt);

// ||f||_{p,q} = (int_0^inf (t^{1/p} f*(t))^q dt/t)^{1/q}, exact on the step
// rearrangement; q = infinity gives sup_t t^{1/p} f*(t)
double lorentz_norm(const GridSignal& f, const LorentzParams& params,
                    std::optional<Region> region = std::nullopt);

inline double weak_l1_norm(const GridSignal& f,
                           std::optional<Region> region = std::nullopt) {
  return lorentz_norm(f, {1.0, std::numeric_limits<double>::infinity()}, region);
}

// (sum_j (2^j |A_j|)^2)^{1/2} over the level sets A_j = {2^j <= |f| < 2^{j+1}}
double dyadic_l12(const GridSignal& f);

// Luxemburg norm inf{lambda > 0 : int (|f|/lambda) log^r(2 + |f|/lambda) <= 1},
// bisected to relative tolerance 1e-10; r = 0 short-circuits to the L1 norm
double orlicz_llogr(const GridSignal& f, const OrliczParams& params);

// sup over partitions with breakpoints at the samples of
// (sum_i |v(a_{i+1}) - v(a_i)|^s)^{1/s}; exact via O(n^2) DP
double s_variation(const std::vector<cplx>& samples, double s);

}  // namespace fmlab
