#pragma once

#include <cstdint>
#include <string>

namespace fmlab {

// C-infinity glue exp(-1/t): rises from identically 0 (t <= 0) to
// identically 1 (t >= 1), flat to all orders at both ends.
double smooth_transition(double t);

// support and plateau of a one-bump window; the transition pieces use
// smooth_transition, so every requested smoothness order is met
struct BumpSpec {
  double support_lo = 0.0;
  double plateau_lo = 0.0;
  double plateau_hi = 0.0;
  double support_hi = 0.0;
  int smoothness = 10;
};

// equals 1 on [plateau_lo, plateau_hi], vanishes outside (support_lo, support_hi)
class SmoothBump {
 public:
  explicit SmoothBump(BumpSpec spec);
  double operator()(double x) const;
  const BumpSpec& spec() const { return spec_; }

 private:
  BumpSpec spec_;
};

// even window b(|x|); used for the dyadic frequency window and its widening
class EvenBump {
 public:
  explicit EvenBump(BumpSpec profile_spec) : profile_(profile_spec) {}
  double operator()(double x) const;
  const SmoothBump& profile() const { return profile_; }

 private:
  SmoothBump profile_;
};

// frequency window for the dyadic decomposition: even, supported on
// +-[1/2, 4], identically 1 on +-[3/4, 3]
EvenBump dyadic_window();
// widened companion: supported on +-[3/8, 6], identically 1 on +-[1/2, 4],
// so the widened projection acts as the identity on the plain one
EvenBump dyadic_window_wide();

// Non-negative even bump psi = (g*g)/(g*g)(0) (g an even bump supported on
// [-halfwidth/2, halfwidth/2]), so psi(0) = 1, psi vanishes outside
// (-halfwidth, halfwidth) and the Fourier transform of psi is non-negative.
// Values come from midpoint quadrature of the convolution integral; the
// integrand is flat to all orders at the overlap endpoints, so the rule
// converges faster than any power of the node count.
class PsiBump {
 public:
  explicit PsiBump(double halfwidth = 0.25, int quad_nodes = 512);
  double operator()(double u) const;
  double halfwidth() const { return halfwidth_; }

 private:
  double raw(double u) const;
  double halfwidth_;
  int quad_nodes_;
  double norm_;
};

// FNV hash of the window construction (specs plus probe samples); recorded
// in experiment reports so runs pin the exact window they used
std::uint64_t window_fingerprint();
std::string window_fingerprint_hex();

}  // namespace fmlab
