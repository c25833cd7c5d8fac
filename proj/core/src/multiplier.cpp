#include "fmlab/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fmlab/bump.hpp"

namespace fmlab {

namespace {

const EvenBump& window(bool wide) {
  static const EvenBump narrow = dyadic_window();
  static const EvenBump widened = dyadic_window_wide();
  return wide ? widened : narrow;
}

// the window support edge scaled to level j must stay inside the lattice
void check_band(const GridConfig& config, int j, bool wide) {
  const double edge = (wide ? 6.0 : 4.0) * std::ldexp(1.0, j);
  const double top = static_cast<double>(config.n() / 2 - 1) / config.T();
  if (edge > top) throw std::domain_error("dyadic window overflows the frequency band");
}

}  // namespace

Symbol make_symbol(const GridConfig& config, std::size_t channels) {
  if (channels == 0) throw std::invalid_argument("symbol needs at least one channel");
  Symbol m;
  m.config = config;
  m.channels = channels;
  m.values.assign(channels * config.n(), cplx{0.0, 0.0});
  return m;
}

double sup_norm(const Symbol& m) {
  double best = 0.0;
  for (const cplx& v : m.values) best = std::max(best, std::abs(v));
  return best;
}

GridSignal apply_multiplier(const Symbol& m, const GridSignal& f) {
  if (!(m.config == f.config)) throw std::invalid_argument("symbol/signal config mismatch");
  if (m.channels != 1 && f.channels != 1 && m.channels != f.channels)
    throw std::invalid_argument("incompatible channel counts");
  const std::size_t out_channels = std::max(m.channels, f.channels);
  const std::size_t n = f.n();

  Spectrum in = dft(f);
  Spectrum out = make_spectrum(f.config, out_channels, f.origin);
  for (std::size_t c = 0; c < out_channels; ++c) {
    const std::size_t mc = m.channels == 1 ? 0 : c;
    const std::size_t fc = f.channels == 1 ? 0 : c;
    for (std::size_t i = 0; i < n; ++i) out.at(c, i) = m.at(mc, i) * in.at(fc, i);
  }
  return idft(out);
}

Symbol dilated_window_symbol(const GridConfig& config, int j, bool wide) {
  check_band(config, j, wide);
  const EvenBump& eta = window(wide);
  const double scale = std::ldexp(1.0, -j);
  return sample_symbol(config, [&](double xi) { return cplx{eta(scale * xi), 0.0}; });
}

GridSignal littlewood_paley(const GridSignal& f, int j) {
  return apply_multiplier(dilated_window_symbol(f.config, j, false), f);
}

GridSignal littlewood_paley_wide(const GridSignal& f, int j) {
  return apply_multiplier(dilated_window_symbol(f.config, j, true), f);
}

GridSignal littlewood_paley_normalized(const GridSignal& f, int j, int jmin, int jmax) {
  if (jmin > jmax) throw std::invalid_argument("empty level range");
  check_band(f.config, jmax, false);
  const EvenBump& eta = window(false);
  Symbol m = sample_symbol(f.config, [&](double xi) {
    const double num = eta(std::ldexp(xi, -j));
    if (num == 0.0) return cplx{0.0, 0.0};
    double den = 0.0;
    for (int k = jmin; k <= jmax; ++k) den += eta(std::ldexp(xi, -k));
    return den > 1e-8 ? cplx{num / den, 0.0} : cplx{0.0, 0.0};
  });
  return apply_multiplier(m, f);
}

int lp_max_level(const GridConfig& config, bool wide) {
  const double edge = wide ? 6.0 : 4.0;
  const double top = static_cast<double>(config.n() / 2 - 1) / config.T();
  int j = 0;
  while (edge * std::ldexp(1.0, j + 1) <= top) ++j;
  while (j > -64 && edge * std::ldexp(1.0, j) > top) --j;
  return j;
}

Symbol frequency_component(const Symbol& m, int j) {
  check_band(m.config, j, false);
  const EvenBump& eta = window(false);
  const std::size_t n = m.config.n();
  const long half = static_cast<long>(n / 2);
  Symbol out = make_symbol(m.config, m.channels);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = static_cast<long>(i) - half;
    const double e = eta(static_cast<double>(k) / m.config.T());
    if (e == 0.0) continue;
    // sample of m at 2^j xi_k, nearest lattice point (exact for j >= 0)
    const long kd = std::llround(std::ldexp(static_cast<double>(k), j));
    if (kd < -half || kd >= half)
      throw std::domain_error("frequency component band overflow");
    const std::size_t id = static_cast<std::size_t>(kd + half);
    for (std::size_t c = 0; c < m.channels; ++c) out.at(c, i) = e * m.at(c, id);
  }
  return out;
}

std::pair<int, int> component_j_range(const GridConfig& config) {
  const double T = config.T();
  // smallest j whose dilation moves at least two lattice steps per unit
  int lo = 0;
  while (std::ldexp(1.0, lo) * T >= 2.0) --lo;
  while (std::ldexp(1.0, lo) * T < 2.0) ++lo;
  const double top = static_cast<double>(config.n() / 2 - 1) / T;
  int hi = 0;
  while (4.0 * std::ldexp(1.0, hi + 1) <= top) ++hi;
  while (hi > lo && 4.0 * std::ldexp(1.0, hi) > top) --hi;
  return {lo, hi};
}

namespace {

// s-variation DP over points in C^d with channel-l2 distances
double variation_dp(const std::vector<std::vector<cplx>>& pts, double s) {
  const std::size_t n = pts.size();
  if (n < 2) return 0.0;
  const auto dist = [&](std::size_t a, std::size_t b) {
    double sq = 0.0;
    for (std::size_t c = 0; c < pts[a].size(); ++c) sq += std::norm(pts[a][c] - pts[b][c]);
    return std::sqrt(sq);
  };
  std::vector<double> D(n, 0.0);
  double best = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    double d = 0.0;
    for (std::size_t k = 0; k < i; ++k)
      d = std::max(d, std::max(D[k], 0.0) + std::pow(dist(i, k), s));
    D[i] = d;
    best = std::max(best, d);
  }
  return std::pow(best, 1.0 / s);
}

}  // namespace

ClassReport marcinkiewicz_functional(const Symbol& m, double s) {
  if (!(s >= 1.0)) throw std::invalid_argument("variation exponent must be >= 1");
  ClassReport report;
  report.name = s == 1.0 ? "marcinkiewicz" : "v_s";
  const auto [jlo, jhi] = component_j_range(m.config);
  for (int j = jlo; j <= jhi; ++j) {
    const Symbol mj = frequency_component(m, j);
    // band samples, negative then positive, in lattice order
    std::vector<std::vector<cplx>> pts;
    for (std::size_t i = 0; i < mj.config.n(); ++i) {
      const double a = std::abs(mj.frequency(i));
      if (a < 0.5 || a > 4.0) continue;
      std::vector<cplx> p(mj.channels);
      for (std::size_t c = 0; c < mj.channels; ++c) p[c] = mj.at(c, i);
      pts.push_back(std::move(p));
    }
    const double value = variation_dp(pts, s);
    report.per_j.emplace_back(j, value);
    report.sup = std::max(report.sup, value);
  }
  return report;
}

double x_atom_norm(const Symbol& mj) {
  const std::size_t n = mj.config.n();
  if (mj.channels != 1) throw std::invalid_argument("x_atom_norm expects a scalar symbol");
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, std::abs(mj.values[i]));
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(mj.frequency(i));
    if ((a < 0.5 || a > 4.0) && std::abs(mj.values[i]) > 1e-12 * std::max(peak, 1.0))
      throw std::domain_error("symbol not supported in the dyadic band");
  }
  // coefficients over maximal constancy intervals of the nonzero samples
  std::vector<cplx> coeffs;
  cplx run{0.0, 0.0};
  bool in_run = false;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx v = mj.values[i];
    if (std::abs(v) <= 1e-13) {
      if (in_run) coeffs.push_back(run);
      in_run = false;
      continue;
    }
    if (in_run && v == run) continue;
    if (in_run) coeffs.push_back(run);
    run = v;
    in_run = true;
  }
  if (in_run) coeffs.push_back(run);

  // greedy grouping into unit-l2 atoms
  double count = 0.0;
  double mass = 0.0;
  for (const cplx& c : coeffs) {
    const double m2 = std::norm(c);
    if (mass > 0.0 && mass + m2 > 1.0) {
      count += 1.0;
      mass = 0.0;
    }
    if (mass == 0.0 && m2 > 1.0) {
      count += std::sqrt(m2);  // oversized coefficient: a rescaled atom
      continue;
    }
    mass += m2;
  }
  return count + std::sqrt(mass);
}

SplitCharacteristic split_characteristic(const GridConfig& config, double xi_l,
                                         double xi_r) {
  const double len = xi_r - xi_l;
  if (!(len > 0.0)) throw std::invalid_argument("degenerate interval");
  if (len < 2.0 * config.freq_spacing() * (1.0 - 1e-12))
    throw std::invalid_argument("interval needs at least two frequency samples");

  SplitCharacteristic out{make_symbol(config), make_symbol(config), make_symbol(config)};
  const SmoothBump psi({xi_l - len, xi_l, xi_r, xi_r + len});
  const SmoothBump left_bump({xi_l - len, xi_l, xi_l, xi_r});
  const SmoothBump right_bump({xi_l, xi_r, xi_r, xi_r + len});
  const std::size_t n = config.n();
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = out.window.frequency(i);
    out.window.values[i] = psi(xi);
    if (xi > xi_l && xi < xi_r) {
      // complementary pair inside I: exact pointwise sum 1
      const double l = left_bump(xi);
      out.left.values[i] = l;
      out.right.values[i] = 1.0 - l;
    } else {
      // outside the open interval a Heaviside factor kills the other piece
      out.left.values[i] = xi > xi_l ? left_bump(xi) : 0.0;
      out.right.values[i] = xi < xi_r ? right_bump(xi) : 0.0;
    }
  }
  return out;
}

int family_overlap(const IntervalFamily& family) {
  std::vector<std::pair<double, int>> events;
  events.reserve(2 * family.members.size());
  for (const auto& fm : family.members) {
    events.emplace_back(fm.lo, 0);  // starts sort before ends at equal coords
    events.emplace_back(fm.hi, 1);
  }
  std::sort(events.begin(), events.end());
  int depth = 0, best = 0;
  for (const auto& [x, kind] : events) {
    depth += kind == 0 ? 1 : -1;
    best = std::max(best, depth);
  }
  return best;
}

BasicInequalityReport verify_basic_inequality(const IntervalFamily& family,
                                              const std::vector<GridSignal>& h) {
  if (family.members.size() != h.size())
    throw std::invalid_argument("one test signal per interval required");
  if (family.members.empty()) throw std::invalid_argument("empty family");
  const GridConfig config = family.members.front().m.config;
  const std::size_t n = config.n();

  BasicInequalityReport report;
  report.overlap = family_overlap(family);
  std::vector<cplx> total(n, cplx{0.0, 0.0});
  for (std::size_t idx = 0; idx < h.size(); ++idx) {
    const auto& fm = family.members[idx];
    if (!(fm.m.config == config) || !(h[idx].config == config))
      throw std::invalid_argument("family members share one grid");
    if (fm.m.channels != 1 || h[idx].channels != 1)
      throw std::invalid_argument("basic inequality uses scalar members");
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, std::abs(fm.m.values[i]));
    Spectrum hs = dft(h[idx]);
    double part = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = fm.m.frequency(i);
      const cplx mv = fm.m.values[i];
      if ((xi < fm.lo || xi > fm.hi) && std::abs(mv) > 1e-12 * std::max(peak, 1.0))
        throw std::invalid_argument("member symbol leaks outside its interval");
      const cplx term = mv * hs.values[i];
      total[i] += term;
      part += std::norm(term);
    }
    report.rhs_sum += part / config.T();
  }
  for (std::size_t i = 0; i < n; ++i) report.lhs += std::norm(total[i]);
  report.lhs /= config.T();

  const double bound = static_cast<double>(report.overlap) * report.rhs_sum;
  report.ratio = bound > 0.0 ? report.lhs / bound : (report.lhs == 0.0 ? 0.0 : HUGE_VAL);
  report.ok = report.lhs <= bound * (1.0 + 1e-10) + 1e-300;
  return report;
}

double xprime_functional(const std::vector<SymbolAtom>& atoms, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("X' exponent must be positive");
  std::map<int, double> per_scale;
  for (const auto& a : atoms) per_scale[a.scale_k] += a.coeff * a.coeff;
  double acc = 0.0;
  for (const auto& [k, ss] : per_scale) acc += std::pow(ss, q / 2.0);
  return std::pow(acc, 1.0 / q);
}

Symbol build_xprime_symbol(const GridConfig& config,
                           const std::vector<SymbolAtom>& atoms) {
  Symbol m = make_symbol(config);
  const std::size_t n = config.n();
  for (const auto& a : atoms) {
    if (!(a.hi > a.lo)) throw std::invalid_argument("degenerate atom interval");
    const double len = a.hi - a.lo;
    const SmoothBump bump({a.lo, a.lo + len / 4.0, a.hi - len / 4.0, a.hi});
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = m.frequency(i);
      if (xi <= a.lo || xi >= a.hi) continue;
      m.values[i] += a.coeff * bump(xi);
    }
  }
  m.atoms = atoms;
  return m;
}

}  // namespace fmlab
