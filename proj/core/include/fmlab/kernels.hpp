#pragma once

#include "fmlab/grid.hpp"

namespace fmlab {

// slowly decaying comparison kernel phi_{a,s}(x) = a (1 + a^2 x^2)^{-s},
// s in (1/2, 1) so that phi is integrable but only barely
struct PhiParams {
  double a = 1.0;
  double s = 0.75;
};

double phi_value(const PhiParams& p, double x);
double phi_deriv1(const PhiParams& p, double x);
double phi_deriv3(const PhiParams& p, double x);

// int_W^infty phi_{a,s}; requires aW >= 2 (binomial series in (aW)^{-2})
double phi_tail_integral(const PhiParams& p, double W);

// sum_m phi(x + mT): direct images plus an Euler-Maclaurin corrected tail.
// Requires aT >= 1/4.
double phi_periodized(const PhiParams& p, double x, double T);

// periodized kernel sampled over one period (single real channel)
GridSignal phi_signal(const PhiParams& p, const GridConfig& config, double origin = 0.0);

// Hardy-Littlewood maximal function over grid-aligned subintervals of the
// period (no wrap-around): Mf(x) = sup_{I ni x} |I|^{-1} int_I |f|.
// Exact over all such intervals; O(n^2). Channels are combined pointwise
// in l2 before maximizing; the result has one channel.
GridSignal hl_maximal(const GridSignal& f);

}  // namespace fmlab
