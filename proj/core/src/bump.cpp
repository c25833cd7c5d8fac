#include "fmlab/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace fmlab {

namespace {

double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double smooth_transition(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = glue(t);
  double b = glue(1.0 - t);
  return a / (a + b);
}

SmoothBump::SmoothBump(BumpSpec spec) : spec_(spec) {
  if (!(spec.support_lo < spec.plateau_lo) || !(spec.plateau_lo <= spec.plateau_hi) ||
      !(spec.plateau_hi < spec.support_hi)) {
    throw std::invalid_argument("bump needs support_lo < plateau_lo <= plateau_hi < support_hi");
  }
  if (spec.smoothness < 0) throw std::invalid_argument("bump smoothness must be non-negative");
}

double SmoothBump::operator()(double x) const {
  if (x <= spec_.support_lo || x >= spec_.support_hi) return 0.0;
  if (x < spec_.plateau_lo) {
    return smooth_transition((x - spec_.support_lo) / (spec_.plateau_lo - spec_.support_lo));
  }
  if (x > spec_.plateau_hi) {
    return smooth_transition((spec_.support_hi - x) / (spec_.support_hi - spec_.plateau_hi));
  }
  return 1.0;
}

double EvenBump::operator()(double x) const { return profile_(std::fabs(x)); }

EvenBump dyadic_window() { return EvenBump(BumpSpec{0.5, 0.75, 3.0, 4.0}); }

EvenBump dyadic_window_wide() { return EvenBump(BumpSpec{0.375, 0.5, 4.0, 6.0}); }

PsiBump::PsiBump(double halfwidth, int quad_nodes)
    : halfwidth_(halfwidth), quad_nodes_(quad_nodes), norm_(1.0) {
  if (!(halfwidth > 0.0)) throw std::invalid_argument("psi halfwidth must be positive");
  if (quad_nodes < 16) throw std::invalid_argument("psi quadrature needs at least 16 nodes");
  norm_ = raw(0.0);
  if (!(norm_ > 0.0)) throw std::runtime_error("psi normalization failed");
}

double PsiBump::raw(double u) const {
  // g is even, supported on [-w/2, w/2], so the convolution integrand
  // g(t) g(u-t) lives on the overlap of two such intervals
  const double half = 0.5 * halfwidth_;
  const double w8 = halfwidth_ / 8.0;
  auto g = [&](double x) {
    double r = std::fabs(x);
    if (r >= half) return 0.0;
    if (r <= w8) return 1.0;
    return smooth_transition((half - r) / (half - w8));
  };
  double lo = std::max(-half, u - half);
  double hi = std::min(half, u + half);
  if (!(lo < hi)) return 0.0;
  const double step = (hi - lo) / quad_nodes_;
  double acc = 0.0;
  for (int i = 0; i < quad_nodes_; ++i) {
    double t = lo + (i + 0.5) * step;
    acc += g(t) * g(u - t);
  }
  return acc * step;
}

double PsiBump::operator()(double u) const {
  if (std::fabs(u) >= halfwidth_) return 0.0;
  return raw(u) / norm_;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fnv1a_double(std::uint64_t h, double v) { return fnv1a(h, &v, sizeof(v)); }

}  // namespace

std::uint64_t window_fingerprint() {
  std::uint64_t h = 14695981039346656037ULL;
  auto eta = dyadic_window();
  auto wide = dyadic_window_wide();
  for (const auto* b : {&eta, &wide}) {
    const auto& s = b->profile().spec();
    h = fnv1a_double(h, s.support_lo);
    h = fnv1a_double(h, s.plateau_lo);
    h = fnv1a_double(h, s.plateau_hi);
    h = fnv1a_double(h, s.support_hi);
    for (double x = 0.25; x <= 6.5; x += 0.125) h = fnv1a_double(h, (*b)(x));
  }
  return h;
}

std::string window_fingerprint_hex() {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(window_fingerprint()));
  return std::string(buf);
}

}  // namespace fmlab
