#include "fmlab/squarefn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "fmlab/kernels.hpp"
#include "fmlab/multiplier.hpp"

namespace fmlab {

namespace {

// cumulative cell counts of a level-N mask; count(j,k) is exact integer
struct CellCounter {
  int N;
  std::vector<long> prefix;

  explicit CellCounter(const DyadicSet& E) : N(E.level), prefix(E.cells.size() + 1, 0) {
    for (std::size_t i = 0; i < E.cells.size(); ++i)
      prefix[i + 1] = prefix[i] + (E.cells[i] ? 1 : 0);
  }
  long count(int j, std::uint64_t k) const {
    const std::size_t w = std::size_t{1} << (N - j);
    return prefix[(k + 1) * w] - prefix[k * w];
  }
  long total() const { return prefix.back(); }
};

RedistributionOutput redistribute_impl(const DyadicSet& E, double eps, double A,
                                       int depth, bool record_stopping) {
  const int N = E.level;
  if (depth > N + 1) throw std::logic_error("redistribution recursion exceeded depth N");
  const std::size_t cells = std::size_t{1} << N;

  RedistributionOutput out;
  out.level = N;
  out.eps = eps;
  out.A = A;
  out.levels.assign(static_cast<std::size_t>(N) + 1, std::vector<double>(cells, 0.0));

  const CellCounter cnt(E);
  const long total = cnt.total();
  if (total == 0) return out;

  const double measure = std::ldexp(static_cast<double>(total), -N);
  const double cell_w = std::ldexp(1.0, -N);

  if (measure >= eps) {
    // base case: f_I = |I|^{-1/2} |<chi_E, psi_I>| chi_I
    for (int j = 0; j < N; ++j) {
      auto& row = out.levels[static_cast<std::size_t>(j)];
      const std::size_t w = cells >> j;
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
        const long dl = cnt.count(j + 1, 2 * k) - cnt.count(j + 1, 2 * k + 1);
        if (dl == 0) continue;
        // |I|^{-1/2} |<chi_E, psi_I>| = 2^j |dl| 2^{-N}
        const double v = std::ldexp(static_cast<double>(std::labs(dl)), j - N);
        std::fill(row.begin() + k * w, row.begin() + (k + 1) * w, v);
      }
    }
    return out;
  }

  // stopping-time case: membership in the balanced family, integer-exact
  const auto balanced = [&](int j, std::uint64_t k) {
    const double c = static_cast<double>(cnt.count(j, k));
    const double scale = std::ldexp(static_cast<double>(total), -j);
    return eps * scale <= c && c <= 2.0 * scale;
  };

  // walk the tree: interior nodes are balanced with balanced ancestors,
  // stopping intervals are the maximal unbalanced nodes
  std::vector<DyadicInterval> interior, stopping;
  std::vector<DyadicInterval> stack{{0, 0}};
  while (!stack.empty()) {
    const DyadicInterval I = stack.back();
    stack.pop_back();
    if (!balanced(I.level, I.index)) {
      stopping.push_back(I);
      continue;
    }
    interior.push_back(I);
    if (I.level < N) {
      stack.push_back(I.right_child());
      stack.push_back(I.left_child());
    }
  }
  if (record_stopping) out.stopping = stopping;

  // recurse on each stopping interval carrying mass; transplant the nested
  // assignment (unit amplitude: the combination below only uses the shape)
  std::vector<double> G(cells, 0.0);  // |E cap J| F_J / ||F_J||_1 on each J
  for (const DyadicInterval& J : stopping) {
    const long mass = cnt.count(J.level, J.index);
    if (mass == 0) continue;
    if (J.level == 0 || J.level == N)
      throw std::logic_error("stopping interval at an extreme level");
    const int sub_N = N - J.level;
    const std::size_t w = cells >> J.level;
    const std::size_t base = J.index * w;

    DyadicSet sub = make_dyadic_set(sub_N);
    for (std::size_t i = 0; i < w; ++i) sub.cells[i] = E.cells[base + i];
    const RedistributionOutput nested =
        redistribute_impl(sub, eps, A, depth + 1, false);
    for (int jj = 0; jj <= sub_N; ++jj) {
      auto& row = out.levels[static_cast<std::size_t>(J.level + jj)];
      const auto& src = nested.levels[static_cast<std::size_t>(jj)];
      for (std::size_t i = 0; i < w; ++i) row[base + i] += src[i];
    }

    double fj_l1 = 0.0;
    std::vector<double> FJ(w, 0.0);
    for (std::size_t i = 0; i < w; ++i) {
      double ss = 0.0;
      for (int jj = 0; jj <= sub_N; ++jj) {
        const double v = out.levels[static_cast<std::size_t>(J.level + jj)][base + i];
        ss += v * v;
      }
      FJ[i] = std::sqrt(ss);
      fj_l1 += FJ[i] * cell_w;
    }
    if (!(fj_l1 > 0.0))
      throw std::logic_error("stopping interval carries mass but no redistribution");
    const double jmass = static_cast<double>(mass) * cell_w;  // |E cap J|
    for (std::size_t i = 0; i < w; ++i) G[base + i] = jmass * FJ[i] / fj_l1;
  }

  // combination formula on the interior intervals
  for (const DyadicInterval& I : interior) {
    const long mass = cnt.count(I.level, I.index);
    if (mass == 0) continue;
    const int j = I.level;
    const std::size_t w = cells >> j;
    const std::size_t base = I.index * w;
    long dl = 0;
    if (j < N) dl = cnt.count(j + 1, 2 * I.index) - cnt.count(j + 1, 2 * I.index + 1);
    if (dl == 0) continue;
    // |I|^{1/2} |<chi_E, psi_I>| = |dl| 2^{-N}
    const double c = std::ldexp(static_cast<double>(std::labs(dl)), -N);
    const double imass = static_cast<double>(mass) * cell_w;  // |E cap I|
    auto& row = out.levels[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < w; ++i)
      if (G[base + i] != 0.0) row[base + i] += c * G[base + i] / imass;
  }
  return out;
}

// <chi_E, psi_I> for I = (j,k) from integer cell counts
double haar_coeff(const CellCounter& cnt, int j, std::uint64_t k) {
  if (j >= cnt.N) return 0.0;
  const long dl = cnt.count(j + 1, 2 * k) - cnt.count(j + 1, 2 * k + 1);
  return std::ldexp(static_cast<double>(dl), -cnt.N) * std::sqrt(std::ldexp(1.0, j));
}

}  // namespace

RedistributionOutput redistribute_char(const DyadicSet& E, double eps, double A) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  return redistribute_impl(E, eps, A, 0, true);
}

CharReport verify_char(const DyadicSet& E, const RedistributionOutput& out) {
  if (E.level != out.level) throw std::invalid_argument("level mismatch");
  const int N = out.level;
  const std::size_t cells = std::size_t{1} << N;
  const double cell_w = std::ldexp(1.0, -N);
  const CellCounter cnt(E);

  CharReport report;
  report.set_measure = static_cast<double>(cnt.total()) * cell_w;

  for (int j = 0; j <= N; ++j) {
    const std::size_t w = cells >> j;
    const auto& row = out.levels[static_cast<std::size_t>(j)];
    const double root_len = std::sqrt(std::ldexp(1.0, -j));  // |I|^{1/2}
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
      double integral = 0.0;
      for (std::size_t i = k * w; i < (k + 1) * w; ++i) integral += row[i];
      integral *= cell_w;  // ||f_I||_1
      const double coeff = std::abs(haar_coeff(cnt, j, k));
      report.mean2_max_slack =
          std::max(report.mean2_max_slack, coeff - integral / root_len);
      report.equality_max_gap =
          std::max(report.equality_max_gap, std::abs(integral - root_len * coeff));
    }
  }

  for (std::size_t i = 0; i < cells; ++i) {
    double ss = 0.0;
    for (const auto& row : out.levels) ss += row[i] * row[i];
    report.square_l1 += std::sqrt(ss) * cell_w;
  }
  const double m = report.set_measure;
  report.square2_ratio =
      m > 0.0 ? report.square_l1 / (m * std::sqrt(std::log(2.0 + 1.0 / m))) : 0.0;
  return report;
}

RedistributionOutput build_gen(const GridSignal& f, double eps, double A) {
  if (f.channels != 1) throw std::invalid_argument("build_gen expects one channel");
  if (f.origin != 0.0 || std::abs(f.config.T() - 1.0) > 1e-12)
    throw std::invalid_argument("build_gen expects the unit grid");
  const int N = f.config.L;
  const std::size_t cells = f.config.n();

  RedistributionOutput out;
  out.level = N;
  out.eps = eps;
  out.A = A;
  out.combo = 0.0;
  out.levels.assign(static_cast<std::size_t>(N) + 1, std::vector<double>(cells, 0.0));

  for (const double sign : {1.0, -1.0}) {
    std::vector<double> part(cells);
    for (std::size_t i = 0; i < cells; ++i)
      part[i] = std::max(sign * f.values[i].real(), 0.0);
    std::vector<double> vals;
    for (double v : part)
      if (v > 0.0) vals.push_back(v);
    if (vals.empty()) continue;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (!std::isfinite(vals.back()))
      throw std::invalid_argument("layer decomposition needs finite values");

    // exact nested layer cake: part = sum_m (v_m - v_{m-1}) chi_{part >= v_m}
    double prev = 0.0;
    for (double v : vals) {
      DyadicSet layer = make_dyadic_set(N);
      for (std::size_t i = 0; i < cells; ++i) layer.cells[i] = part[i] >= v ? 1 : 0;
      const double weight = v - prev;
      prev = v;
      out.combo += weight;
      const RedistributionOutput piece = redistribute_impl(layer, eps, A, 0, false);
      for (int j = 0; j <= N; ++j) {
        auto& dst = out.levels[static_cast<std::size_t>(j)];
        const auto& src = piece.levels[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < cells; ++i) dst[i] += weight * src[i];
      }
    }
  }
  return out;
}

GenReport verify_gen(const GridSignal& f, const RedistributionOutput& out) {
  const int N = out.level;
  const std::size_t cells = std::size_t{1} << N;
  const double cell_w = std::ldexp(1.0, -N);
  // cell integrals of f, then pairwise sums up the tree
  std::vector<double> sums(cells);
  for (std::size_t i = 0; i < cells; ++i) sums[i] = f.values[i].real() * cell_w;

  GenReport report;
  for (std::size_t i = 0; i < cells; ++i) {
    double ss = 0.0;
    for (const auto& row : out.levels) ss += row[i] * row[i];
    report.square_l1 += std::sqrt(ss) * cell_w;
  }

  for (int j = N - 1; j >= 0; --j) {
    const std::size_t m = std::size_t{1} << j;
    const std::size_t w = cells >> j;
    std::vector<double> coarse(m);
    const auto& row = out.levels[static_cast<std::size_t>(j)];
    const double root_inv = std::sqrt(std::ldexp(1.0, j));  // |I|^{-1/2}
    for (std::size_t k = 0; k < m; ++k) {
      coarse[k] = sums[2 * k] + sums[2 * k + 1];
      const double coeff = std::abs(sums[2 * k] - sums[2 * k + 1]) * root_inv;
      double integral = 0.0;
      for (std::size_t i = k * w; i < (k + 1) * w; ++i) integral += row[i];
      integral *= cell_w;
      report.mean_max_slack = std::max(report.mean_max_slack, coeff - root_inv * integral);
    }
    sums = std::move(coarse);
  }
  return report;
}

SquareFnOutput continuous_squarefn(const GridSignal& f, int theta_nodes, double eps) {
  if (theta_nodes < 16) throw std::invalid_argument("need at least 16 theta nodes");
  if (f.channels != 1 || f.origin != 0.0)
    throw std::invalid_argument("expected a scalar signal with origin 0");
  const GridConfig config = f.config;
  const double h = config.h;
  int e;
  if (std::frexp(h, &e) != 0.5) throw std::invalid_argument("spacing must be 2^-k");
  const int nu = 1 - e;  // h = 2^{-nu}
  if (nu < 2 || config.T() < 2.0)
    throw std::invalid_argument("grid too coarse for the unit-interval construction");

  double peak = 0.0;
  for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < config.n(); ++i) {
    const double x = f.coordinate(i);
    if (x >= 1.0 / 3.0 && x <= 2.0 / 3.0) continue;
    if (std::abs(f.values[i]) > 1e-12 * std::max(peak, 1.0))
      throw std::invalid_argument("signal must be supported in [1/3, 2/3]");
  }

  SquareFnOutput out;
  out.theta_nodes = theta_nodes;
  out.unit_level = nu;

  // negative levels: magnitude of the widened projection, while the window
  // still meets the frequency lattice
  int jneg = 0;
  while (6.0 * std::ldexp(1.0, jneg - 1) * config.T() >= 1.0) --jneg;
  for (int j = -1; j >= jneg; --j) {
    GridSignal piece = littlewood_paley_wide(f, j);
    GridSignal mag = make_signal(config, 1, f.origin);
    for (std::size_t i = 0; i < config.n(); ++i) mag.values[i] = std::abs(piece.values[i]);
    out.F.emplace(j, std::move(mag));
  }

  // theta-averaged redistribution levels: A_k(x) = int f^theta_k(x+theta) dtheta
  const std::size_t n = config.n();
  const std::size_t unit_cells = std::size_t{1} << nu;
  std::vector<std::vector<double>> avg(static_cast<std::size_t>(nu) + 1,
                                       std::vector<double>(n, 0.0));
  const double quad_w = (2.0 / 3.0) / static_cast<double>(theta_nodes);
  for (int m = 0; m < theta_nodes; ++m) {
    const double theta_raw =
        -1.0 / 3.0 + (static_cast<double>(m) + 0.5) * (2.0 / 3.0) / theta_nodes;
    // snap to the grid so translation is an exact index shift
    const long shift = std::lround(theta_raw / h);
    const double theta = static_cast<double>(shift) * h;
    out.thetas.push_back(theta);

    // f^theta(u) = f(u - theta) restricted to [0,1)
    GridSignal unit = make_signal(make_config(nu, h), 1, 0.0);
    for (std::size_t c = 0; c < unit_cells; ++c) {
      const long src = static_cast<long>(c) - shift;
      if (src >= 0 && src < static_cast<long>(n)) unit.values[c] = f.values[src];
    }
    const RedistributionOutput gen = build_gen(unit, eps);
    // scatter: A_k(x) += w g_k(x + theta), x = u - theta on the torus
    for (int k = 0; k <= nu; ++k) {
      const auto& src = gen.levels[static_cast<std::size_t>(k)];
      auto& dst = avg[static_cast<std::size_t>(k)];
      for (std::size_t c = 0; c < unit_cells; ++c) {
        if (src[c] == 0.0) continue;
        long x = (static_cast<long>(c) - shift) % static_cast<long>(n);
        if (x < 0) x += static_cast<long>(n);
        dst[static_cast<std::size_t>(x)] += quad_w * src[c];
      }
    }
  }

  const int jmax = std::max(lp_max_level(config, false), nu);
  for (int j = 0; j <= jmax; ++j) {
    GridSignal Fj = make_signal(config, 1, f.origin);
    for (int k = 0; k <= nu; ++k) {
      const double w = std::sqrt(std::ldexp(1.0, -std::abs(j - k)));
      const auto& src = avg[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < n; ++i)
        Fj.values[i] += w * src[i];
    }
    out.F.emplace(j, std::move(Fj));
  }
  return out;
}

double fj_norm(const SquareFnOutput& out) {
  if (out.F.empty()) return 0.0;
  const GridConfig config = out.F.begin()->second.config;
  double acc = 0.0;
  for (std::size_t i = 0; i < config.n(); ++i) {
    double ss = 0.0;
    for (const auto& [j, Fj] : out.F) ss += std::norm(Fj.values[i]);
    acc += std::sqrt(ss) * config.h;
  }
  return acc;
}

double fj_support_constant(const GridSignal& f, const SquareFnOutput& out,
                           double phi_exponent) {
  double best = 0.0;
  const int cap = lp_max_level(f.config, false);
  for (const auto& [j, Fj] : out.F) {
    if (j > cap) continue;
    // periodization of phi_j needs 2^j T >= 1/4; coarser kernels are skipped
    if (std::ldexp(1.0, j) * f.config.T() < 0.25) continue;
    const GridSignal delta = littlewood_paley(f, j);
    const GridSignal phi =
        phi_signal({std::ldexp(1.0, j), phi_exponent}, f.config, f.origin);
    const GridSignal conv = convolve(Fj, phi);
    for (std::size_t i = 0; i < f.config.n(); ++i) {
      const double den = conv.values[i].real();
      if (den <= 0.0) continue;
      best = std::max(best, std::abs(delta.values[i]) / den);
    }
  }
  return best;
}

double normal_theta(double x, int j, int k_max, double radius_scale) {
  if (j < 0) throw std::invalid_argument("normality level must be >= 0");
  const double lo = -1.0 / 3.0, hi = 1.0 / 3.0;
  std::vector<std::pair<double, double>> excluded;
  for (int k = 0; k <= std::min(j, k_max); ++k) {
    const double spacing = std::ldexp(1.0, -k);
    const double radius =
        radius_scale * 0.01 * std::pow(2.0, -(j - k) / 10.0) * spacing;
    const long m_lo = static_cast<long>(std::floor((x + lo - radius) / spacing));
    const long m_hi = static_cast<long>(std::ceil((x + hi + radius) / spacing));
    for (long m = m_lo; m <= m_hi; ++m) {
      const double center = static_cast<double>(m) * spacing - x;
      const double a = std::max(lo, center - radius);
      const double b = std::min(hi, center + radius);
      if (a < b) excluded.emplace_back(a, b);
    }
  }
  std::sort(excluded.begin(), excluded.end());
  double covered = 0.0, cursor = lo;
  for (const auto& [a, b] : excluded) {
    if (b <= cursor) continue;
    covered += b - std::max(a, cursor);
    cursor = b;
  }
  return (hi - lo) - covered;
}

}  // namespace fmlab
