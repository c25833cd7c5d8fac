#include "fmlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fmlab {

namespace {

// channel-l2 magnitudes of the samples lying in the (optional) region
std::vector<double> region_magnitudes(const GridSignal& f,
                                      const std::optional<Region>& region) {
  std::vector<double> out;
  out.reserve(f.config.n());
  for (std::size_t j = 0; j < f.config.n(); ++j) {
    if (region) {
      const double x = f.coordinate(j);
      if (x < region->lo || x >= region->hi) continue;
    }
    double sq = 0.0;
    for (std::size_t c = 0; c < f.channels; ++c) sq += std::norm(f.at(c, j));
    out.push_back(std::sqrt(sq));
  }
  if (region && out.empty()) throw std::invalid_argument("region contains no samples");
  return out;
}

}  // namespace

std::vector<std::pair<double, double>> decreasing_rearrangement(
    const GridSignal& f, std::optional<Region> region) {
  std::vector<double> mags = region_magnitudes(f, region);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  std::vector<std::pair<double, double>> steps;
  steps.reserve(mags.size());
  for (double v : mags) steps.emplace_back(v, f.config.h);
  return steps;
}

double lorentz_norm(const GridSignal& f, const LorentzParams& params,
                    std::optional<Region> region) {
  if (!(params.p > 0.0) || !(params.q > 0.0))
    throw std::invalid_argument("Lorentz exponents must be positive");
  const auto steps = decreasing_rearrangement(f, region);
  const double p = params.p, q = params.q;
  const double h = f.config.h;
  if (std::isinf(q)) {
    // f* is constant on [ih, (i+1)h); sup of t^{1/p} f* there sits at the
    // right endpoint
    double best = 0.0;
    for (std::size_t i = 0; i < steps.size(); ++i)
      best = std::max(best,
                      std::pow(static_cast<double>(i + 1) * h, 1.0 / p) * steps[i].first);
    return best;
  }
  // int_{ih}^{(i+1)h} t^{q/p - 1} dt = (p/q) [t^{q/p}] increments
  double acc = 0.0;
  double tpow_lo = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double tpow_hi = std::pow(static_cast<double>(i + 1) * h, q / p);
    const double v = steps[i].first;
    if (v > 0.0) acc += std::pow(v, q) * (p / q) * (tpow_hi - tpow_lo);
    tpow_lo = tpow_hi;
  }
  return std::pow(acc, 1.0 / q);
}

double dyadic_l12(const GridSignal& f) {
  std::map<int, double> level_measure;
  const double h = f.config.h;
  for (std::size_t j = 0; j < f.config.n(); ++j) {
    double sq = 0.0;
    for (std::size_t c = 0; c < f.channels; ++c) sq += std::norm(f.at(c, j));
    const double v = std::sqrt(sq);
    if (v <= 0.0) continue;
    int e;
    (void)std::frexp(v, &e);  // v in [2^{e-1}, 2^e)
    level_measure[e - 1] += h;
  }
  double acc = 0.0;
  for (const auto& [j, meas] : level_measure) {
    const double t = std::ldexp(meas, j);
    acc += t * t;
  }
  return std::sqrt(acc);
}

double orlicz_llogr(const GridSignal& f, const OrliczParams& params) {
  if (!(params.r >= 0.0)) throw std::invalid_argument("Orlicz exponent must be >= 0");
  const std::vector<double> mags = region_magnitudes(f, params.domain);
  const double h = f.config.h;
  double l1 = 0.0;
  for (double v : mags) l1 += h * v;
  if (l1 == 0.0) return 0.0;
  if (params.r == 0.0) return l1;  // the defining inequality is int |f|/lambda <= 1

  const double r = params.r;
  const auto functional = [&](double lambda) {
    double acc = 0.0;
    for (double v : mags) {
      if (v == 0.0) continue;
      const double t = v / lambda;
      acc += h * t * std::pow(std::log(2.0 + t), r);
    }
    return acc;
  };

  // bracket 1 between G(hi) <= 1 <= G(lo), then bisect
  double lo = l1, hi = l1;
  while (functional(hi) > 1.0) hi *= 2.0;
  while (functional(lo) < 1.0) lo *= 0.5;
  while ((hi - lo) > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (functional(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double s_variation(const std::vector<cplx>& samples, double s) {
  if (samples.size() < 2) throw std::invalid_argument("s-variation needs two samples");
  if (!(s >= 1.0)) throw std::invalid_argument("s-variation needs s >= 1");
  const std::size_t n = samples.size();
  // D[i] = best partition sum ending at sample i (at least one jump)
  std::vector<double> D(n, 0.0);
  double best = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    double d = 0.0;
    for (std::size_t k = 0; k < i; ++k) {
      const double jump = std::pow(std::abs(samples[i] - samples[k]), s);
      d = std::max(d, std::max(D[k], 0.0) + jump);
    }
    D[i] = d;
    best = std::max(best, d);
  }
  return std::pow(best, 1.0 / s);
}

}  // namespace fmlab
