#include "fmlab/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fmlab/bump.hpp"
#include "fmlab/norms.hpp"

namespace fmlab {

namespace {

const PsiBump& psi() {
  static const PsiBump bump;  // halfwidth 1/4
  return bump;
}

[[noreturn]] void scale_error(const std::string& what) {
  throw std::invalid_argument("grid cannot resolve " + what);
}

// largest frequency on the lattice
double band_top(const GridConfig& config) {
  return static_cast<double>(config.n() / 2 - 1) / config.T();
}

void require_band(const GridConfig& config, double freq, const std::string& what) {
  if (band_top(config) < freq) {
    std::ostringstream os;
    os << what << " (frequency " << freq << " exceeds the lattice top "
       << band_top(config) << ")";
    scale_error(os.str());
  }
}

void require_period(const GridConfig& config, double T, const std::string& what) {
  if (config.T() < T) {
    std::ostringstream os;
    os << what << " (need period >= " << T << ", have " << config.T() << ")";
    scale_error(os.str());
  }
}

bool power_of_two_spacing(double h) {
  int e;
  return std::frexp(h, &e) == 0.5;
}

Counterexample generate_m0(const GridConfig& config) {
  require_period(config, 32.0, "the unit-width bump of the base symbol");
  require_band(config, 2.0, "the base symbol's support [1, 5/4]");
  Counterexample out;
  out.m = sample_symbol(config, [](double xi) { return cplx{m0_value(xi), 0.0}; });
  out.m.atoms.push_back({1.0, 1.25, 1.0, 1.0, -2});
  return out;
}

Counterexample generate_mn(const CounterexampleSpec& spec, const GridConfig& config) {
  const int N = spec.N;
  require_period(config, 32.0, "the channel-0 bump of width 1/4");
  require_band(config, 1.25 * std::ldexp(1.0, N),
               "channel " + std::to_string(N) + " with support 2^N [1, 5/4]");
  Counterexample out;
  out.m = make_symbol(config, static_cast<std::size_t>(N) + 1);
  const std::size_t n = config.n();
  for (int j = 0; j <= N; ++j) {
    const double scale = std::ldexp(1.0, -j);
    for (std::size_t i = 0; i < n; ++i)
      out.m.at(static_cast<std::size_t>(j), i) = m0_value(out.m.frequency(i) * scale);
    out.m.atoms.push_back(
        {std::ldexp(1.0, j), 1.25 * std::ldexp(1.0, j), std::ldexp(1.0, j), 1.0, j - 2});
  }

  // companion: f^ a plateau bump equal to 1 on [-2^N, 2^N], then a hard
  // truncation of f at |x| >= 2^{N+2}
  const double edge = std::ldexp(1.0, N);
  if (config.T() >= std::ldexp(1.0, N + 3) && config.max_freq() >= 2.0 * edge) {
    const SmoothBump hat({-2.0 * edge, -edge, edge, 2.0 * edge});
    Spectrum s = make_spectrum(config, 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) s.values[i] = hat(s.frequency(i));
    GridSignal f = idft(s);
    double removed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(f.signed_offset(i)) >= 4.0 * edge) {
        removed += std::abs(f.values[i]) * config.h;
        f.values[i] = 0.0;
      }
    }
    out.companion = std::move(f);
    std::ostringstream os;
    os << "companion truncated at |x| >= 2^" << (N + 2) << "; removed l1 mass " << removed;
    out.note = os.str();
  } else {
    std::ostringstream os;
    os << "companion omitted: needs period >= 2^" << (N + 3)
       << " and Nyquist >= 2^" << (N + 1);
    out.note = os.str();
  }
  return out;
}

Counterexample generate_mprime(const CounterexampleSpec& spec, const GridConfig& config) {
  const int N = spec.N;
  require_period(config, std::ldexp(1.0, N + 3),
                 "the finest bump of width 2^-" + std::to_string(N + 1));
  require_band(config, 2.0, "the symbol's support inside [1, 2]");
  Counterexample out;
  const double amp = 1.0 / std::sqrt(static_cast<double>(N));
  out.m = sample_symbol(config, [&](double xi) {
    double acc = 0.0;
    for (int j = 1; j <= N; ++j) acc += psi()(std::ldexp(xi - 1.0, j) - 1.0);
    return cplx{amp * acc, 0.0};
  });
  for (int j = 1; j <= N; ++j) {
    const double w = std::ldexp(1.0, -j);
    out.m.atoms.push_back({1.0 + 0.5 * w, 1.0 + 1.5 * w, 1.0 + w, amp, -j - 1});
  }
  return out;
}

Counterexample generate_mdouble(const CounterexampleSpec& spec, const GridConfig& config) {
  const int N = spec.N;
  // the centers 2^j are lattice points already at T = 16, and the central
  // diagnostic only integrates the smooth bumps, so the mild period suffices
  require_period(config, 16.0, "the unit-width bumps at the lacunary centers");
  require_band(config, std::ldexp(1.0, N) + 0.25,
               "the bump centered at 2^" + std::to_string(N));
  Counterexample out;
  out.m = make_symbol(config, static_cast<std::size_t>(N) + 1);
  const std::size_t n = config.n();
  for (int j = 0; j <= N; ++j) {
    const double center = std::ldexp(1.0, j);
    for (std::size_t i = 0; i < n; ++i)
      out.m.at(static_cast<std::size_t>(j), i) = psi()(out.m.frequency(i) - center);
    out.m.atoms.push_back({center - 0.25, center + 0.25, center, 1.0, -2});
  }
  return out;
}

Counterexample generate_mtriple(const CounterexampleSpec& spec, const GridConfig& config) {
  const int N = spec.N;
  const int jlo = (N + 9) / 10;  // ceil(N/10)
  const int jhi = N / 4;
  if (jhi < jlo) scale_error("the channel range [N/10, N/4] (empty at N = " +
                             std::to_string(N) + ")");
  require_period(config, std::ldexp(1.0, jhi + 3),
                 "the finest bump of width 2^-" + std::to_string(jhi + 1));
  require_band(config, 0.5, "the symbol's support inside [0, 1/2]");
  if (!(spec.q > 0.0)) throw std::invalid_argument("q must be positive");

  Counterexample out;
  out.m = make_symbol(config, static_cast<std::size_t>(jhi - jlo) + 1);
  const std::size_t n = config.n();
  const double amp = std::pow(static_cast<double>(N), -1.0 / spec.q);
  for (int j = jlo; j <= jhi; ++j) {
    const double center = static_cast<double>(j) / static_cast<double>(N);
    const std::size_t c = static_cast<std::size_t>(j - jlo);
    for (std::size_t i = 0; i < n; ++i)
      out.m.at(c, i) = amp * psi()(std::ldexp(out.m.frequency(i) - center, j));
    const double w = std::ldexp(1.0, -j - 1);
    out.m.atoms.push_back({center - w, center + w, center, amp, -j});
  }

  if (config.h <= 1.0 / 16.0) {
    // f = sum_k psi(x - Nk), |k| <= kmax: the lattice of unit bumps
    GridSignal f = make_signal(config, 1, 0.0);
    // fill the period: a near-periodic train has no edge ramp, so the flat
    // response field covers the whole circle
    const long kmax = std::min<long>(
        {4096, (1L << std::min(N, 30)) - 1,
         static_cast<long>((config.T() / 2.0 - 1.0) / static_cast<double>(N))});
    for (long k = -kmax; k <= kmax; ++k) {
      const double center = static_cast<double>(N) * static_cast<double>(k);
      const long lo = std::lround(std::floor((center - 0.5) / config.h));
      const long hi = std::lround(std::ceil((center + 0.5) / config.h));
      for (long idx = lo; idx <= hi; ++idx) {
        const double x = static_cast<double>(idx) * config.h;
        long wrapped = idx % static_cast<long>(n);
        if (wrapped < 0) wrapped += static_cast<long>(n);
        f.values[static_cast<std::size_t>(wrapped)] += psi()(x - center);
      }
    }
    out.companion = std::move(f);
    std::ostringstream os;
    os << "companion truncated to |k| <= " << kmax << " bumps";
    out.note = os.str();
  } else {
    out.note = "companion omitted: needs spacing <= 1/16 to resolve the unit bumps";
  }
  return out;
}

Counterexample generate_hirschman(const CounterexampleSpec& spec, const GridConfig& config) {
  if (!(spec.alpha > 0.0) || !(spec.beta >= 0.0))
    throw std::invalid_argument("hirschman family needs alpha > 0 and beta >= 0");
  Counterexample out;
  const double alpha = spec.alpha, beta = spec.beta;
  out.m = sample_symbol(config, [alpha, beta](double xi) {
    const double mag = std::pow(1.0 + xi * xi, -0.5 * beta);
    return std::polar(mag, std::pow(std::abs(xi), alpha));
  });
  return out;
}

Counterexample generate_hilbert(const CounterexampleSpec& spec, const GridConfig& config) {
  const int N = spec.N;
  Counterexample out;
  out.m = sample_symbol(config, [](double xi) {
    if (xi > 0.0) return cplx{0.0, -1.0};
    if (xi < 0.0) return cplx{0.0, 1.0};
    return cplx{0.0, 0.0};
  });
  const double width = std::ldexp(1.0, -N);
  if (!power_of_two_spacing(config.h) || config.h > width)
    scale_error("the spike of width 2^-" + std::to_string(N) +
                " (need power-of-two spacing <= that width)");
  require_period(config, 2.0, "the unit observation window next to the spike");
  GridSignal f = make_signal(config, 1, 0.0);
  const std::size_t count = static_cast<std::size_t>(std::lround(width / config.h));
  for (std::size_t i = 0; i < count; ++i) f.values[i] = std::ldexp(1.0, N);
  out.companion = std::move(f);
  return out;
}

}  // namespace

Family family_from_name(const std::string& name) {
  if (name == "m0") return Family::m0;
  if (name == "mN") return Family::mN;
  if (name == "mPrimeN") return Family::mPrimeN;
  if (name == "mDoublePrimeN") return Family::mDoublePrimeN;
  if (name == "mTriplePrimeN") return Family::mTriplePrimeN;
  if (name == "hirschman") return Family::hirschman;
  if (name == "hilbertTest") return Family::hilbertTest;
  throw std::invalid_argument("unknown family: " + name);
}

std::string family_name(Family family) {
  switch (family) {
    case Family::m0: return "m0";
    case Family::mN: return "mN";
    case Family::mPrimeN: return "mPrimeN";
    case Family::mDoublePrimeN: return "mDoublePrimeN";
    case Family::mTriplePrimeN: return "mTriplePrimeN";
    case Family::hirschman: return "hirschman";
    case Family::hilbertTest: return "hilbertTest";
  }
  throw std::logic_error("unreachable");
}

double m0_value(double xi) { return xi >= 1.0 ? psi()(xi - 1.0) : 0.0; }

Counterexample generate(const CounterexampleSpec& spec, const GridConfig& config) {
  if (spec.N < 1) throw std::invalid_argument("N must be at least 1");
  switch (spec.family) {
    case Family::m0: return generate_m0(config);
    case Family::mN: return generate_mn(spec, config);
    case Family::mPrimeN: return generate_mprime(spec, config);
    case Family::mDoublePrimeN: return generate_mdouble(spec, config);
    case Family::mTriplePrimeN: return generate_mtriple(spec, config);
    case Family::hirschman: return generate_hirschman(spec, config);
    case Family::hilbertTest: return generate_hilbert(spec, config);
  }
  throw std::logic_error("unreachable");
}

Symbol randomize_signs(const Symbol& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Symbol out = make_symbol(m.config, 1);
  const std::size_t n = m.config.n();
  for (std::size_t c = 0; c < m.channels; ++c) {
    // low bit of the raw draw: avoids distribution adapters, which are not
    // pinned across standard library implementations
    const double eps = (rng() & 1u) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) out.values[i] += eps * m.values[c * n + i];
  }
  out.atoms = m.atoms;  // coefficients enter the functionals squared
  return out;
}

KernelProfile kernel_profile(const Symbol& m, const CounterexampleSpec& spec) {
  // the m0/mN/mPrimeN diagnostics live at spatial scale 2^N; the central
  // height of mDoublePrimeN sits at x = 0 and needs no extent
  const bool scales_with_n =
      spec.family == Family::mN || spec.family == Family::mPrimeN;
  if (scales_with_n && m.config.T() < 4.0 * std::ldexp(1.0, spec.N))
    scale_error("the spatial asymptotics (need period >= 2^" +
                std::to_string(spec.N + 2) + ")");
  if (spec.family == Family::m0 && m.config.T() < 80.0)
    scale_error("the remainder window [10, T/8] (need period >= 80)");

  Spectrum s = make_spectrum(m.config, m.channels, 0.0);
  s.values = m.values;
  KernelProfile profile;
  profile.kernel = idft(s);
  const GridSignal& ker = profile.kernel;
  const std::size_t n = m.config.n();
  const double T = m.config.T();

  switch (spec.family) {
    case Family::m0: {
      // remainder against the periodized leading term of the oscillatory
      // kernel, i e^{2 pi i x} cot(pi x / T) / (2T), plus the half-sample
      // term e^{2 pi i x} / (2T): the lattice carries the jump's full value
      // where the continuum side reconstructs its midpoint
      profile.quantity = "remainder_sup";
      for (std::size_t i = 0; i < n; ++i) {
        const double x = ker.signed_offset(i);
        if (x < 10.0 || x > T / 8.0) continue;
        const double arg = std::numbers::pi * x / T;
        const cplx osc = std::polar(1.0, 2.0 * std::numbers::pi * x);
        const cplx lead =
            osc * (cplx{0.0, 1.0} * (std::cos(arg) / std::sin(arg)) + 1.0) /
            (2.0 * T);
        profile.value =
            std::max(profile.value, x * x * std::abs(ker.values[i] - lead));
      }
      break;
    }
    case Family::mN: {
      profile.quantity = "l1q_unit";
      profile.value = lorentz_norm(ker, {1.0, spec.q}, Region{0.0, 1.0});
      break;
    }
    case Family::mPrimeN: {
      profile.quantity = "weighted_sup";
      const double hi = std::ldexp(1.0, spec.N - 1);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = ker.signed_offset(i);
        if (x < 4.0 || x > hi) continue;
        profile.value = std::max(profile.value, x * std::abs(ker.values[i]));
      }
      break;
    }
    case Family::mDoublePrimeN: {
      profile.quantity = "central_height";
      double ss = 0.0;
      for (std::size_t c = 0; c < ker.channels; ++c) ss += std::norm(ker.at(c, 0));
      profile.value = std::sqrt(ss);
      break;
    }
    case Family::mTriplePrimeN: {
      profile.quantity = "xprime_q";
      profile.value = xprime_functional(m.atoms, spec.q);
      break;
    }
    case Family::hirschman:
    case Family::hilbertTest: {
      profile.quantity = "kernel_sup";
      profile.value = sup_norm(ker);
      break;
    }
  }
  return profile;
}

GridSignal reference_kappa0(int L, double h) {
  const GridConfig config = make_config(L, h);
  require_band(config, 1.25, "the base symbol's support [1, 5/4]");
  Spectrum s = make_spectrum(config, 1, 0.0);
  for (std::size_t i = 0; i < config.n(); ++i) s.values[i] = m0_value(s.frequency(i));
  return idft(s);
}

double mn_l1q_via_dilation(int N, double q, const GridSignal& kappa0, int eval_log2) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  const double reach = std::ldexp(1.0, N);
  if (kappa0.config.T() < 4.0 * reach)
    scale_error("the dilated arguments (reference period must be >= 2^" +
                std::to_string(N + 2) + ")");
  const GridConfig eval = make_config(eval_log2, std::ldexp(1.0, -eval_log2));
  GridSignal profile = make_signal(eval, 1, 0.5 * eval.h);  // midpoint samples
  const double ref_h = kappa0.config.h;
  for (std::size_t i = 0; i < eval.n(); ++i) {
    const double x = profile.coordinate(i);
    double ss = 0.0;
    for (int j = 0; j <= N; ++j) {
      const double y = std::ldexp(x, j);
      const std::size_t idx = static_cast<std::size_t>(std::llround(y / ref_h));
      ss += std::ldexp(std::norm(kappa0.values[idx]), 2 * j);
    }
    profile.values[i] = std::sqrt(ss);
  }
  return lorentz_norm(profile, {1.0, q}, Region{0.0, 1.0});
}

}  // namespace fmlab
