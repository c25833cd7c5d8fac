#pragma once

#include <map>
#include <vector>

#include "fmlab/dyadic.hpp"
#include "fmlab/grid.hpp"

namespace fmlab {

// output of the dyadic redistribution: per-level nonnegative step functions
// f_j = sum_{|I| = 2^{-j}} f_I at resolution 2^{-level}; the restriction of
// levels[j] to an interval I of level j is f_I
struct RedistributionOutput {
  int level = 0;
  double eps = 0.0;
  double A = 0.0;
  double combo = 1.0;  // total layer-cake weight (build_gen); 1 for indicators
  std::vector<std::vector<double>> levels;  // (level+1) arrays of 2^level cells
  std::vector<DyadicInterval> stopping;     // top-level maximal excluded intervals

  std::size_t cells() const { return levels.empty() ? 0 : levels[0].size(); }
};

// The recursive redistribution for indicator functions.  Base case |E| >= eps
// assigns f_I = |I|^{-1/2} |<chi_E, psi_I>| chi_I; otherwise the mass of E is
// pushed onto the stopping family and the recursion's outputs are combined so
// that |<chi_E, psi_I>| <= |I|^{-1/2} ||f_I||_1 holds at every interval.
RedistributionOutput redistribute_char(const DyadicSet& E, double eps = 1.0 / 256.0,
                                       double A = 1.0);

struct CharReport {
  double set_measure = 0.0;
  double mean2_max_slack = 0.0;     // max_I (|<chi_E,psi_I>| - |I|^{-1/2}||f_I||_1)
  double equality_max_gap = 0.0;    // max_I | ||f_I||_1 - |I|^{1/2}|<chi_E,psi_I>| |
  double square_l1 = 0.0;           // ||(sum_I f_I^2)^{1/2}||_1
  double square2_ratio = 0.0;       // square_l1 / (|E| log^{1/2}(2 + 1/|E|)), 0 at |E|=0
};
CharReport verify_char(const DyadicSet& E, const RedistributionOutput& out);

// Lift to real functions on the unit grid: exact layer-cake decomposition of
// the positive and negative parts into nested indicator layers, one
// redistribution per layer, superposed with the layer weights.  Guarantees
// |<f, psi_I>| <= |I|^{-1/2} int_I f_j with roundoff-only slack.
RedistributionOutput build_gen(const GridSignal& f, double eps = 1.0 / 256.0,
                               double A = 1.0);

// report for the (mean) guarantee of build_gen
struct GenReport {
  double mean_max_slack = 0.0;  // max over I of (|<f,psi_I>| - |I|^{-1/2} int_I f_j)
  double square_l1 = 0.0;
};
GenReport verify_gen(const GridSignal& f, const RedistributionOutput& out);

struct SquareFnOutput {
  std::map<int, GridSignal> F;  // j -> nonnegative F_j on the input grid
  int theta_nodes = 0;
  int unit_level = 0;  // resolution 2^{-unit_level} used on [0,1)
  std::vector<double> thetas;  // quadrature nodes actually used (grid-aligned)
};

// Translation-averaged continuous square function: F_j = |Delta~_j f| for
// j < 0, and for j >= 0 the 2^{-|j-k|/2}-weighted theta-average of the
// redistributions of the translates f(. - theta), theta in [-1/3, 1/3].
// Requires f real-valued with origin 0, spacing an exact power of two,
// period >= 2, and support inside [1/3, 2/3].
SquareFnOutput continuous_squarefn(const GridSignal& f, int theta_nodes,
                                   double eps = 1.0 / 256.0);

// || (sum_j F_j^2)^{1/2} ||_1 over the torus
double fj_norm(const SquareFnOutput& out);

// empirical constant in |Delta_j f| <= C (F_j * phi_j): the max over x and
// all j in the output with representable window of the pointwise ratio
double fj_support_constant(const GridSignal& f, const SquareFnOutput& out,
                           double phi_exponent = 0.75);

// measure of the set of theta in [-1/3,1/3] with
// dist(x + theta, 2^{-k} Z) >= radius_scale (1/100) 2^{-(j-k)/10} 2^{-k}
// for all 0 <= k <= min(j, k_max)
double normal_theta(double x, int j, int k_max, double radius_scale = 1.0);

}  // namespace fmlab
