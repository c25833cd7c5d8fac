#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fmlab/grid.hpp"

namespace fmlab {

// dyadic subinterval of [0,1): [index 2^-level, (index+1) 2^-level)
struct DyadicInterval {
  int level = 0;
  std::uint64_t index = 0;

  double left() const { return static_cast<double>(index) * length(); }
  double right() const { return static_cast<double>(index + 1) * length(); }
  double length() const { return std::ldexp(1.0, -level); }
  DyadicInterval parent() const { return {level - 1, index >> 1}; }
  DyadicInterval left_child() const { return {level + 1, index << 1}; }
  DyadicInterval right_child() const { return {level + 1, (index << 1) | 1}; }

  auto operator<=>(const DyadicInterval&) const = default;
};

// union of level-N cells of [0,1), stored as a bitmask
struct DyadicSet {
  int level = 0;
  std::vector<std::uint8_t> cells;  // size 2^level, 0/1

  std::size_t cell_count() const { return cells.size(); }
  double cell_width() const { return std::ldexp(1.0, -level); }
  std::size_t popcount() const;
  double measure() const { return static_cast<double>(popcount()) * cell_width(); }
};

DyadicSet make_dyadic_set(int level);
DyadicSet random_dyadic_set(int level, double density, std::mt19937_64& rng);
// indicator of the set sampled on the unit grid at resolution 2^-L, L >= level
GridSignal indicator_signal(const DyadicSet& set, int L);

// Haar data for a level-N step function on [0,1): the global integral plus
// one coefficient <f, psi_I> per interval of level 0..N-1, where
// psi_I = |I|^{-1/2} (chi_{left half} - chi_{right half})
struct HaarCoeffs {
  int data_level = 0;
  double mean = 0.0;                        // integral of f over [0,1)
  std::vector<std::vector<double>> levels;  // levels[j] has 2^j entries

  double at(const DyadicInterval& I) const { return levels[I.level][I.index]; }
};

// exact finite sums over the unit grid; uses the real part of f.
// Requires T = 1 and origin 0.
HaarCoeffs haar_analyze(const GridSignal& f);
// reconstructs the level-N step function on a 2^-L grid, L >= N
GridSignal haar_synthesize(const HaarCoeffs& coeffs, int L);

}  // namespace fmlab
