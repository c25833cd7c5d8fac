#pragma once

#include <string>
#include <vector>

#include "fmlab/grid.hpp"

namespace fmlab {

// annotation for symbols assembled from atoms: a frequency interval [lo, hi],
// the atom's coefficient, a base frequency inside the interval, and the
// dyadic scale k with |I| ~ 2^k
struct SymbolAtom {
  double lo = 0.0;
  double hi = 0.0;
  double base = 0.0;
  double coeff = 0.0;
  int scale_k = 0;
};

// frequency-domain samples of a multiplier on the grid's frequency lattice
// xi_k = k/T, k in [-n/2, n/2); element i of each channel holds k = i - n/2
struct Symbol {
  GridConfig config;
  std::size_t channels = 1;
  std::vector<cplx> values;
  std::vector<SymbolAtom> atoms;  // optional provenance

  cplx at(std::size_t c, std::size_t i) const { return values[c * config.n() + i]; }
  cplx& at(std::size_t c, std::size_t i) { return values[c * config.n() + i]; }
  long k_of_index(std::size_t i) const {
    return static_cast<long>(i) - static_cast<long>(config.n() / 2);
  }
  double frequency(std::size_t i) const {
    return static_cast<double>(k_of_index(i)) / config.T();
  }
};

Symbol make_symbol(const GridConfig& config, std::size_t channels = 1);

// scalar symbol sampled from a callable double -> cplx
template <typename F>
Symbol sample_symbol(const GridConfig& config, F&& fn) {
  Symbol m = make_symbol(config, 1);
  for (std::size_t i = 0; i < config.n(); ++i) m.values[i] = fn(m.frequency(i));
  return m;
}

double sup_norm(const Symbol& m);

// T_m f: pointwise frequency multiplication, then inverse transform.
// Channel rules: scalar m times d-channel f, d-channel m times scalar f,
// or matching channel counts applied componentwise.
GridSignal apply_multiplier(const Symbol& m, const GridSignal& f);

// eta(2^{-j} xi) sampled on the lattice; wide variant uses the widened
// window (identically 1 on +-[1/2,4], supported in +-[3/8,6])
Symbol dilated_window_symbol(const GridConfig& config, int j, bool wide = false);

// Littlewood-Paley pieces Delta_j f (and the widened projection used where
// Delta_j = Delta_j Delta~_j is needed)
GridSignal littlewood_paley(const GridSignal& f, int j);
GridSignal littlewood_paley_wide(const GridSignal& f, int j);
// partition-of-unity normalized variant: symbol eta(2^{-j} xi) divided by
// sum_{k in [jmin, jmax]} eta(2^{-k} xi) wherever that sum is > 1e-8
GridSignal littlewood_paley_normalized(const GridSignal& f, int j, int jmin, int jmax);

// largest j whose window support +-[1/2,4] (resp +-[3/8,6]) scaled by 2^j
// stays strictly inside the representable frequency band
int lp_max_level(const GridConfig& config, bool wide = false);

// m_j(xi) = eta(xi) m(2^j xi); dilation resamples m by nearest lattice
// sample (exact for j >= 0)
Symbol frequency_component(const Symbol& m, int j);

// window of j for which frequency_component is meaningful on this grid:
// [smallest j with 2^j >= 1/T, largest j with 4 2^j inside the band]
std::pair<int, int> component_j_range(const GridConfig& config);

struct ClassReport {
  std::string name;
  std::vector<std::pair<int, double>> per_j;  // (j, functional value)
  double sup = 0.0;
};

// per-j s-variation (s = 1: Marcinkiewicz) of the frequency components over
// their support, negative band and positive band concatenated
ClassReport marcinkiewicz_functional(const Symbol& m, double s = 1.0);

// upper bound on the atomic X norm of a step-sampled component: coefficients
// over maximal constancy intervals, grouped greedily into unit-l2 atoms;
// the count weighted by the residual mass of the open group
double x_atom_norm(const Symbol& mj);

// chi_I = window * left + window * right at every sample, with
// left = psi^l_I H(. - xi_l) and right = psi^r_I H(xi_r - .), H = chi_{(0,inf)}
struct SplitCharacteristic {
  Symbol window;  // psi_I: 1 on [xi_l, xi_r], supported in [xi_l-|I|, xi_r+|I|]
  Symbol left;
  Symbol right;
};
SplitCharacteristic split_characteristic(const GridConfig& config, double xi_l,
                                         double xi_r);

struct FamilyMember {
  double lo = 0.0;
  double hi = 0.0;
  double base = 0.0;
  Symbol m;
};
struct IntervalFamily {
  std::vector<FamilyMember> members;
};

// max of sum_I chi_I by an endpoint sweep (closed intervals)
int family_overlap(const IntervalFamily& family);

struct BasicInequalityReport {
  double lhs = 0.0;
  double rhs_sum = 0.0;
  int overlap = 0;
  double ratio = 0.0;  // lhs / (overlap * rhs_sum)
  bool ok = false;
};

// || sum_I T_{m_I} h_I ||_2^2 <= N sum_I || T_{m_I} h_I ||_2^2, both sides
// evaluated in frequency by Plancherel
BasicInequalityReport verify_basic_inequality(const IntervalFamily& family,
                                              const std::vector<GridSignal>& h);

// (sum_k (sum_{|I| ~ 2^k} c_I^2)^{q/2})^{1/q} over the atom annotations
double xprime_functional(const std::vector<SymbolAtom>& atoms, double q);

// sum of coeff * (smooth bump adapted to [lo, hi], plateau the middle half),
// with the atoms recorded as the annotation
Symbol build_xprime_symbol(const GridConfig& config,
                           const std::vector<SymbolAtom>& atoms);

}  // namespace fmlab
