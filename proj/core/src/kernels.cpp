#include "fmlab/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fmlab {

double phi_value(const PhiParams& p, double x) {
  const double u = p.a * p.a * x * x;
  return p.a * std::pow(1.0 + u, -p.s);
}

double phi_deriv1(const PhiParams& p, double x) {
  const double a = p.a, s = p.s;
  const double u = a * a * x * x;
  return -2.0 * s * a * a * a * x * std::pow(1.0 + u, -s - 1.0);
}

double phi_deriv3(const PhiParams& p, double x) {
  const double a = p.a, s = p.s;
  const double u = a * a * x * x;
  const double a3 = a * a * a;
  const double a5 = a3 * a * a;
  const double a7 = a5 * a * a;
  return 12.0 * s * (s + 1.0) * a5 * x * std::pow(1.0 + u, -s - 2.0) -
         8.0 * s * (s + 1.0) * (s + 2.0) * a7 * x * x * x * std::pow(1.0 + u, -s - 3.0);
}

double phi_tail_integral(const PhiParams& p, double W) {
  const double z = p.a * W;
  if (!(z >= 2.0)) throw std::invalid_argument("phi tail integral needs aW >= 2");
  // int_z^inf (1+v^2)^{-s} dv expanded in powers of z^{-2}
  const double s = p.s;
  const double zi2 = 1.0 / (z * z);
  double coeff = 1.0;  // binom(-s, k) * (-1)^k = rising factorial / k!
  double zpow = std::pow(z, 1.0 - 2.0 * s);
  double sum = 0.0;
  for (int k = 0; k < 80; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double term = sign * coeff * zpow / (2.0 * s + 2.0 * k - 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    coeff *= (s + k) / (k + 1.0);
    zpow *= zi2;
  }
  return sum;
}

double phi_periodized(const PhiParams& p, double x, double T) {
  if (!(T > 0.0) || !(p.a * T >= 0.25))
    throw std::invalid_argument("phi periodization needs aT >= 1/4");
  // fold x into (-T/2, T/2]
  x -= T * std::round(x / T);
  if (x <= -T / 2) x += T;

  // two-sided fifth-order remainder stays below 1e-9 relative once aW >= 8
  const int M = std::max(8, static_cast<int>(std::ceil(8.0 / (p.a * T))));
  double direct = 0.0;
  for (int m = -M; m <= M; ++m) direct += phi_value(p, x + m * T);

  // right tail: sum_{m > M} phi(x + mT); left tail mirrors via evenness
  double tails = 0.0;
  for (const double xs : {x, -x}) {
    const double W = xs + (M + 0.5) * T;
    tails += phi_tail_integral(p, W) / T + phi_deriv1(p, W) * T / 24.0 -
             phi_deriv3(p, W) * T * T * T * (7.0 / 5760.0);
  }
  return direct + tails;
}

GridSignal phi_signal(const PhiParams& p, const GridConfig& config, double origin) {
  GridSignal f = make_signal(config, 1, origin);
  const double T = config.T();
  for (std::size_t j = 0; j < config.n(); ++j)
    f.values[j] = phi_periodized(p, f.coordinate(j), T);
  return f;
}

GridSignal hl_maximal(const GridSignal& f) {
  const std::size_t n = f.config.n();
  std::vector<double> mag(n);
  for (std::size_t j = 0; j < n; ++j) {
    double sq = 0.0;
    for (std::size_t c = 0; c < f.channels; ++c) sq += std::norm(f.at(c, j));
    mag[j] = std::sqrt(sq);
  }
  // prefix[j] = sum of the first j cells
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + mag[j];

  std::vector<double> best(n, 0.0);
  std::vector<double> suffix(n);
  for (std::size_t l = 0; l < n; ++l) {
    // suffix[i] = max over r > i of the average of cells [l, r)
    double running = -1.0;
    for (std::size_t i = n; i-- > l;) {
      const double avg = (prefix[i + 1] - prefix[l]) / static_cast<double>(i + 1 - l);
      running = std::max(running, avg);
      suffix[i] = running;
    }
    for (std::size_t i = l; i < n; ++i) best[i] = std::max(best[i], suffix[i]);
  }
  GridSignal out = make_signal(f.config, 1, f.origin);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = best[j];
  return out;
}

}  // namespace fmlab
