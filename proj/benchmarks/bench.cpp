#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fmlab/czdecomp.hpp"
#include "fmlab/dyadic.hpp"
#include "fmlab/grid.hpp"
#include "fmlab/multiplier.hpp"
#include "fmlab/norms.hpp"
#include "fmlab/squarefn.hpp"

using namespace fmlab;

namespace {

GridSignal random_signal(int L, double h, std::size_t channels, std::uint64_t seed) {
  GridSignal f = make_signal(make_config(L, h), channels);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : f.values) v = cplx{u(rng), u(rng)};
  return f;
}

void bm_dft(benchmark::State& state) {
  const GridSignal f = random_signal(static_cast<int>(state.range(0)), 1.0 / 16.0, 1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(dft(f));
  state.SetComplexityN(state.range(0));
}

void bm_apply_multiplier(benchmark::State& state) {
  const GridConfig c = make_config(static_cast<int>(state.range(0)), 1.0 / 16.0);
  const Symbol m = sample_symbol(c, [](double xi) { return cplx{xi / (1.0 + xi * xi), 0.0}; });
  const GridSignal f = random_signal(static_cast<int>(state.range(0)), 1.0 / 16.0, 1, 8);
  for (auto _ : state) benchmark::DoNotOptimize(apply_multiplier(m, f));
}

void bm_redistribute(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  const DyadicSet E = random_dyadic_set(level, 0.25, rng);
  for (auto _ : state) benchmark::DoNotOptimize(redistribute_char(E));
}

void bm_lorentz(benchmark::State& state) {
  const GridSignal f = random_signal(static_cast<int>(state.range(0)), 1.0 / 16.0, 1, 9);
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_norm(f, {1.0, 2.0}));
}

void bm_czd(benchmark::State& state) {
  const GridSignal f = random_signal(static_cast<int>(state.range(0)), 1.0 / 16.0, 2, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cz_decompose(f, 0.8));
  }
}

void bm_s_variation(benchmark::State& state) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> samples(static_cast<std::size_t>(state.range(0)));
  for (auto& v : samples) v = cplx{u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(s_variation(samples, 2.0));
}

void bm_squarefn(benchmark::State& state) {
  GridSignal f = make_signal(make_config(10, 1.0 / 512.0));  // T = 2
  for (std::size_t j = 0; j < f.n(); ++j) {
    const double x = f.coordinate(j);
    f.values[j] = (x >= 0.4 && x < 0.6) ? 1.0 : 0.0;
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(continuous_squarefn(f, static_cast<int>(state.range(0))));
}

BENCHMARK(bm_dft)->DenseRange(10, 18, 4);
BENCHMARK(bm_apply_multiplier)->DenseRange(10, 16, 3);
BENCHMARK(bm_redistribute)->DenseRange(6, 12, 2);
BENCHMARK(bm_lorentz)->DenseRange(12, 18, 3);
BENCHMARK(bm_czd)->DenseRange(12, 18, 3);
BENCHMARK(bm_s_variation)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(bm_squarefn)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
