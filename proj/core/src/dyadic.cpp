#include "fmlab/dyadic.hpp"

#include <numeric>
#include <stdexcept>

namespace fmlab {

std::size_t DyadicSet::popcount() const {
  return static_cast<std::size_t>(
      std::accumulate(cells.begin(), cells.end(), std::uint64_t{0}));
}

DyadicSet make_dyadic_set(int level) {
  if (level < 0 || level > 26) throw std::invalid_argument("dyadic set level out of range");
  DyadicSet s;
  s.level = level;
  s.cells.assign(std::size_t{1} << level, 0);
  return s;
}

DyadicSet random_dyadic_set(int level, double density, std::mt19937_64& rng) {
  DyadicSet s = make_dyadic_set(level);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (auto& c : s.cells) c = unif(rng) < density ? 1 : 0;
  return s;
}

GridSignal indicator_signal(const DyadicSet& set, int L) {
  if (L < set.level) throw std::invalid_argument("indicator grid is coarser than the set");
  GridSignal f = make_signal(make_config(L, std::ldexp(1.0, -L)), 1, 0.0);
  const std::size_t rep = std::size_t{1} << (L - set.level);
  for (std::size_t c = 0; c < set.cells.size(); ++c) {
    if (!set.cells[c]) continue;
    for (std::size_t r = 0; r < rep; ++r) f.values[c * rep + r] = 1.0;
  }
  return f;
}

HaarCoeffs haar_analyze(const GridSignal& f) {
  if (f.channels != 1) throw std::invalid_argument("haar_analyze expects one channel");
  if (f.origin != 0.0 || std::abs(f.config.T() - 1.0) > 1e-12)
    throw std::invalid_argument("haar_analyze expects the unit grid");
  const int N = f.config.L;
  const std::size_t n = f.config.n();
  const double h = f.config.h;

  // cell integrals, finest level first
  std::vector<double> sums(n);
  for (std::size_t j = 0; j < n; ++j) sums[j] = h * f.values[j].real();

  HaarCoeffs out;
  out.data_level = N;
  out.levels.assign(static_cast<std::size_t>(N), {});
  for (int j = N - 1; j >= 0; --j) {
    const std::size_t m = std::size_t{1} << j;
    std::vector<double> coarse(m);
    auto& row = out.levels[static_cast<std::size_t>(j)];
    row.resize(m);
    const double scale = std::ldexp(1.0, j);  // |I|^{-1}
    for (std::size_t k = 0; k < m; ++k) {
      coarse[k] = sums[2 * k] + sums[2 * k + 1];
      row[k] = (sums[2 * k] - sums[2 * k + 1]) * std::sqrt(scale);
    }
    sums = std::move(coarse);
  }
  out.mean = sums[0];
  return out;
}

GridSignal haar_synthesize(const HaarCoeffs& coeffs, int L) {
  const int N = coeffs.data_level;
  if (L < N) throw std::invalid_argument("haar_synthesize grid is coarser than the data");
  // pointwise values on level-j cells, refined one level at a time
  std::vector<double> vals{coeffs.mean};
  for (int j = 0; j < N; ++j) {
    const std::size_t m = std::size_t{1} << j;
    std::vector<double> next(2 * m);
    const double scale = std::sqrt(std::ldexp(1.0, j));  // |I|^{-1/2}
    for (std::size_t k = 0; k < m; ++k) {
      const double bump = coeffs.levels[static_cast<std::size_t>(j)][k] * scale;
      next[2 * k] = vals[k] + bump;
      next[2 * k + 1] = vals[k] - bump;
    }
    vals = std::move(next);
  }
  GridSignal f = make_signal(make_config(L, std::ldexp(1.0, -L)), 1, 0.0);
  const std::size_t rep = std::size_t{1} << (L - N);
  for (std::size_t c = 0; c < vals.size(); ++c)
    for (std::size_t r = 0; r < rep; ++r) f.values[c * rep + r] = vals[c];
  return f;
}

}  // namespace fmlab
