#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fmlab/bump.hpp"

using namespace fmlab;

TEST_CASE("smooth transition endpoints and monotonicity") {
  CHECK(smooth_transition(-1.0) == 0.0);
  CHECK(smooth_transition(0.0) == 0.0);
  CHECK(smooth_transition(1.0) == 1.0);
  CHECK(smooth_transition(2.0) == 1.0);
  CHECK(smooth_transition(0.5) == doctest::Approx(0.5));  // odd symmetry about 1/2
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = smooth_transition(i / 100.0);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}

TEST_CASE("smooth bump plateau and support") {
  const SmoothBump b({1.0, 2.0, 3.0, 5.0});
  CHECK(b(0.9) == 0.0);
  CHECK(b(1.0) == 0.0);
  CHECK(b(2.0) == 1.0);
  CHECK(b(2.5) == 1.0);
  CHECK(b(3.0) == 1.0);
  CHECK(b(5.0) == 0.0);
  CHECK(b(6.0) == 0.0);
  CHECK(b(1.5) > 0.0);
  CHECK(b(1.5) < 1.0);
  CHECK(b(4.0) > 0.0);
  CHECK(b(4.0) < 1.0);
}

TEST_CASE("dyadic window shape") {
  const EvenBump eta = dyadic_window();
  for (const double s : {-1.0, 1.0}) {
    CHECK(eta(s * 0.5) == 0.0);
    CHECK(eta(s * 0.45) == 0.0);
    CHECK(eta(s * 0.75) == 1.0);
    CHECK(eta(s * 2.0) == 1.0);
    CHECK(eta(s * 3.0) == 1.0);
    CHECK(eta(s * 4.0) == 0.0);
    CHECK(eta(s * 5.0) == 0.0);
    CHECK(eta(s * 0.6) > 0.0);
    CHECK(eta(s * 3.5) > 0.0);
  }
  CHECK(eta(0.6) == doctest::Approx(eta(-0.6)));
}

TEST_CASE("wide window covers the plain one") {
  const EvenBump eta = dyadic_window();
  const EvenBump wide = dyadic_window_wide();
  for (const double s : {-1.0, 1.0}) {
    CHECK(wide(s * 0.5) == 1.0);
    CHECK(wide(s * 4.0) == 1.0);
    CHECK(wide(s * 0.375) == 0.0);
    CHECK(wide(s * 6.0) == 0.0);
  }
  // identically 1 wherever the plain window is nonzero
  for (int i = 0; i <= 1000; ++i) {
    const double x = 0.4 + i * (4.2 - 0.4) / 1000.0;
    if (eta(x) != 0.0) CHECK(wide(x) == 1.0);
  }
}

TEST_CASE("psi bump normalization, support, and evenness") {
  const PsiBump psi;
  CHECK(psi(0.0) == doctest::Approx(1.0));
  CHECK(psi(0.25) == 0.0);
  CHECK(psi(-0.25) == 0.0);
  CHECK(psi(0.3) == 0.0);
  CHECK(psi(0.1) > 0.0);
  CHECK(psi(0.1) == doctest::Approx(psi(-0.1)));
  CHECK(psi(0.2) < psi(0.1));  // decreasing away from the center
}

TEST_CASE("psi transform is nonnegative") {
  // oracle: composite Simpson for psi^(xi) = int psi(x) cos(2 pi xi x) dx
  const PsiBump psi;
  const auto transform = [&](double xi) {
    const int pieces = 4000;
    const double lo = -0.25, hi = 0.25;
    const double w = (hi - lo) / pieces;
    double acc = 0.0;
    for (int i = 0; i < pieces; ++i) {
      const double a = lo + i * w;
      const auto g = [&](double x) {
        return psi(x) * std::cos(2.0 * std::numbers::pi * xi * x);
      };
      acc += (w / 6.0) * (g(a) + 4.0 * g(a + 0.5 * w) + g(a + w));
    }
    return acc;
  };
  for (const double xi : {0.0, 0.5, 1.0, 2.0, 3.7, 5.0, 8.0, 13.0})
    CHECK(transform(xi) >= -1e-9);
  CHECK(transform(0.0) > 0.05);  // integral of a unit-height bump of width ~1/2
}

TEST_CASE("window fingerprint is stable within a build") {
  CHECK(window_fingerprint() == window_fingerprint());
  const std::string hex = window_fingerprint_hex();
  CHECK(hex.size() == 16);
  CHECK(hex == window_fingerprint_hex());
}
