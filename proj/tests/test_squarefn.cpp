#include <doctest.h>

#include <cmath>
#include <random>

#include "fmlab/multiplier.hpp"
#include "fmlab/squarefn.hpp"
#include "helpers.hpp"

using namespace fmlab;
using namespace fmlab::testing;

namespace {

// oracle: <chi_E, psi_I> from integer cell counts, independent of the
// implementation's counters
double brute_coeff(const DyadicSet& E, int j, std::uint64_t k) {
  const int N = E.level;
  if (j >= N) return 0.0;
  const std::size_t w = std::size_t{1} << (N - j - 1);
  long nl = 0, nr = 0;
  for (std::size_t i = 0; i < w; ++i) {
    nl += E.cells[(2 * k) * w + i];
    nr += E.cells[(2 * k + 1) * w + i];
  }
  return std::ldexp(static_cast<double>(nl - nr), -N) * std::sqrt(std::ldexp(1.0, j));
}

// oracle: ||f_I||_1 read straight off the output rows
double row_integral(const RedistributionOutput& out, int j, std::uint64_t k) {
  const std::size_t w = out.cells() >> j;
  double acc = 0.0;
  for (std::size_t i = k * w; i < (k + 1) * w; ++i)
    acc += out.levels[static_cast<std::size_t>(j)][i];
  return acc * std::ldexp(1.0, -out.level);
}

struct SlackSummary {
  double slack = -1e300;  // max of |coeff| - |I|^{-1/2} ||f_I||_1
  double gap = 0.0;       // max of | ||f_I||_1 - |I|^{1/2} |coeff| |
};

SlackSummary scan_all_intervals(const DyadicSet& E, const RedistributionOutput& out) {
  SlackSummary s;
  for (int j = 0; j <= out.level; ++j) {
    const double root = std::sqrt(std::ldexp(1.0, -j));
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
      const double coeff = std::abs(brute_coeff(E, j, k));
      const double integral = row_integral(out, j, k);
      s.slack = std::max(s.slack, coeff - integral / root);
      s.gap = std::max(s.gap, std::abs(integral - root * coeff));
    }
  }
  return s;
}

}  // namespace

TEST_CASE("base case matches the closed form") {
  // |E| = 1/2 >= eps: every f_I is |I|^{-1/2} |<chi_E, psi_I>| chi_I
  DyadicSet E = make_dyadic_set(3);
  for (const std::size_t i : {0u, 2u, 3u, 5u}) E.cells[i] = 1;
  const RedistributionOutput out = redistribute_char(E, 1.0 / 256.0);
  REQUIRE(out.levels.size() == 4);
  for (int j = 0; j < 3; ++j)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
      const double want = std::abs(brute_coeff(E, j, k)) * std::sqrt(std::ldexp(1.0, j));
      const std::size_t w = out.cells() >> j;
      for (std::size_t i = k * w; i < (k + 1) * w; ++i)
        CHECK(out.levels[static_cast<std::size_t>(j)][i] == doctest::Approx(want));
    }
  const SlackSummary s = scan_all_intervals(E, out);
  CHECK(s.slack <= 1e-12);
  CHECK(s.gap <= 1e-12);
}

TEST_CASE("exhaustive level-4 enumeration") {
  // every one of the 65536 subsets: the (mean-2) property with equality
  double worst_slack = -1e300, worst_gap = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
    DyadicSet E = make_dyadic_set(4);
    for (std::size_t i = 0; i < 16; ++i) E.cells[i] = (mask >> i) & 1u;
    const RedistributionOutput out = redistribute_char(E, 1.0 / 256.0);
    const SlackSummary s = scan_all_intervals(E, out);
    worst_slack = std::max(worst_slack, s.slack);
    worst_gap = std::max(worst_gap, s.gap);
  }
  CHECK(worst_slack <= 1e-9);
  CHECK(worst_gap <= 1e-10);
}

TEST_CASE("sparse sets exercise the stopping recursion") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const int level = 6 + static_cast<int>(rng() % 5);
    // measure ~ 0.08 < eps = 0.25 lands in the stopping-time branch
    const DyadicSet E = random_dyadic_set(level, 0.08, rng);
    const RedistributionOutput out = redistribute_char(E, 0.25);
    const SlackSummary s = scan_all_intervals(E, out);
    CHECK(s.slack <= 1e-10);
    CHECK(s.gap <= 1e-10);

    const CharReport rep = verify_char(E, out);
    CHECK(rep.set_measure == doctest::Approx(E.measure()));
    CHECK(rep.mean2_max_slack <= 1e-10);
    CHECK(rep.equality_max_gap <= 1e-10);
    if (E.popcount() > 0) {
      CHECK(rep.square_l1 > 0.0);
      CHECK(rep.square2_ratio > 0.0);
    }

    // the recorded stopping family tiles the unit interval
    double len = 0.0;
    for (const DyadicInterval& J : out.stopping) len += J.length();
    if (!out.stopping.empty()) CHECK(len == doctest::Approx(1.0));
  }
}

TEST_CASE("redistribution validation") {
  const DyadicSet E = make_dyadic_set(4);
  CHECK_THROWS_AS(redistribute_char(E, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(redistribute_char(E, 1.0), std::invalid_argument);
  const RedistributionOutput out = redistribute_char(E, 0.5);
  CHECK(verify_char(E, out).set_measure == 0.0);
  DyadicSet other = make_dyadic_set(5);
  CHECK_THROWS_AS(verify_char(other, out), std::invalid_argument);
}

TEST_CASE("layer-cake lift") {
  const GridConfig c = make_config(4, 1.0 / 16.0);
  GridSignal f = make_signal(c);
  std::mt19937_64 rng(59);
  for (auto& v : f.values) v = std::floor(6.0 * u01(rng)) - 2.0;  // integer steps

  const RedistributionOutput out = build_gen(f, 1.0 / 256.0);
  double pos_max = 0.0, neg_max = 0.0;
  for (const auto& v : f.values) {
    pos_max = std::max(pos_max, v.real());
    neg_max = std::max(neg_max, -v.real());
  }
  CHECK(out.combo == doctest::Approx(pos_max + neg_max));

  const GenReport rep = verify_gen(f, out);
  CHECK(rep.mean_max_slack <= 1e-10);
  CHECK(rep.square_l1 > 0.0);

  // rejects non-unit grids and extra channels
  CHECK_THROWS_AS(build_gen(make_signal(make_config(4, 0.125)), 0.004),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_gen(make_signal(c, 2), 0.004), std::invalid_argument);
}

TEST_CASE("continuous square function on a centered bump") {
  const GridConfig c = make_config(9, std::ldexp(1.0, -8));  // T = 2, nu = 8
  GridSignal f = make_signal(c);
  for (std::size_t i = 0; i < c.n(); ++i) {
    const double x = f.coordinate(i);
    const double u = 32.0 * (x - 0.5);
    f.values[i] = std::abs(u) < 1.0 ? (1.0 + std::cos(std::numbers::pi * u)) : 0.0;
  }

  const SquareFnOutput out = continuous_squarefn(f, 16, 1.0 / 256.0);
  CHECK(out.unit_level == 8);
  CHECK(out.theta_nodes == 16);
  REQUIRE(out.thetas.size() == 16);
  for (const double theta : out.thetas) {
    CHECK(std::abs(theta) <= 1.0 / 3.0 + 1e-12);
    CHECK(theta / c.h == doctest::Approx(std::round(theta / c.h)));  // grid aligned
  }

  bool has_negative_levels = false;
  for (const auto& [j, Fj] : out.F) {
    if (j < 0) has_negative_levels = true;
    for (const auto& v : Fj.values) {
      CHECK(v.imag() == 0.0);
      CHECK(v.real() >= 0.0);
    }
  }
  CHECK(has_negative_levels);
  CHECK(out.F.count(0) == 1);
  CHECK(out.F.count(out.unit_level) == 1);

  CHECK(fj_norm(out) > 0.0);
  const double constant = fj_support_constant(f, out);
  CHECK(constant > 0.0);
  CHECK(std::isfinite(constant));
}

TEST_CASE("continuous square function input validation") {
  const GridConfig c = make_config(9, std::ldexp(1.0, -8));
  GridSignal f = make_signal(c);
  f.values[0] = 1.0;  // x = 0, outside [1/3, 2/3]
  CHECK_THROWS_AS(continuous_squarefn(f, 16, 1.0 / 256.0), std::invalid_argument);

  GridSignal ok = make_signal(c);
  ok.values[128] = 1.0;  // x = 0.5
  CHECK_THROWS_AS(continuous_squarefn(ok, 8, 1.0 / 256.0), std::invalid_argument);

  GridSignal coarse = make_signal(make_config(2, 0.5), 1, 0.0);
  coarse.values[1] = 1.0;  // x = 0.5 on T = 2, but h = 1/2 is too coarse
  CHECK_THROWS_AS(continuous_squarefn(coarse, 16, 1.0 / 256.0),
                  std::invalid_argument);

  GridSignal odd_h = make_signal(make_config(9, 0.003), 1, 0.0);
  CHECK_THROWS_AS(continuous_squarefn(odd_h, 16, 1.0 / 256.0),
                  std::invalid_argument);
}

TEST_CASE("normality measure matches a dense scan") {
  const auto brute = [](double x, int j, int k_max, double scale) {
    const int M = 400001;
    long good = 0;
    for (int i = 0; i < M; ++i) {
      const double theta = -1.0 / 3.0 + (i + 0.5) * (2.0 / 3.0) / M;
      bool ok = true;
      for (int k = 0; k <= std::min(j, k_max) && ok; ++k) {
        const double spacing = std::ldexp(1.0, -k);
        const double radius = scale * 0.01 * std::pow(2.0, -(j - k) / 10.0) * spacing;
        const double y = (x + theta) / spacing;
        const double dist = std::abs(y - std::round(y)) * spacing;
        if (dist < radius) ok = false;
      }
      if (ok) ++good;
    }
    return (2.0 / 3.0) * static_cast<double>(good) / M;
  };

  for (const auto& [x, j, k_max, scale] :
       std::vector<std::tuple<double, int, int, double>>{
           {0.5, 0, 8, 1.0}, {0.5, 4, 8, 1.0}, {0.37, 6, 3, 1.0}, {0.7, 5, 8, 20.0}}) {
    CHECK(normal_theta(x, j, k_max, scale) ==
          doctest::Approx(brute(x, j, k_max, scale)).epsilon(2e-3));
  }
  CHECK(normal_theta(0.5, 3, 8) <= 2.0 / 3.0);
  CHECK(normal_theta(0.5, 3, 8) > 0.6);  // tiny default radii exclude little
  CHECK_THROWS_AS(normal_theta(0.5, -1, 8), std::invalid_argument);
}
