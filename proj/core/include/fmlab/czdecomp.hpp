#pragma once

#include <cstdint>
#include <vector>

#include "fmlab/grid.hpp"

namespace fmlab {

// one bad piece of the decomposition: the interval J as a node of the dyadic
// tree over the period (level 0 = whole period) plus the mean-zero values
// b_J = (F - avg_J F) chi_J, stored row-major channel by channel over J's cells
struct CZBadPart {
  int level = 0;
  std::uint64_t index = 0;
  std::size_t start = 0;  // first grid cell covered
  std::size_t count = 0;  // number of cells (a power of two)
  std::vector<cplx> values;
};

struct CZOutput {
  double height = 0.0;
  GridSignal g;
  std::vector<CZBadPart> bad;
};

// Dyadic Calderon-Zygmund decomposition at the given height: the bad
// intervals are the maximal dyadic intervals where the average of the
// channel-l2 magnitude exceeds the height, g equals F outside them and the
// channelwise average inside.
CZOutput cz_decompose(const GridSignal& F, double height);

// ratios against the contract constants; the structural invariants
// (disjoint maximal dyadic intervals, exact cell ranges) are checked and
// violations throw
struct CZReport {
  double g_sup_ratio = 0.0;         // ||g||_inf / height
  double g_l2_ratio = 0.0;          // ||g||_2^2 / (height ||F||_1)
  double b_l1_ratio = 0.0;          // max_J ||b_J||_1 / (height |J|)
  double measure_ratio = 0.0;       // height sum_J |J| / ||F||_1
  double reconstruction_error = 0.0;  // sup_x |g + sum_J b_J - F|
  double max_moment = 0.0;          // max_{J,channel} |int_J b_J|
};
CZReport verify_cz(const GridSignal& F, const CZOutput& out);

}  // namespace fmlab
