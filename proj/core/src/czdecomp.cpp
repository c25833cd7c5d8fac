#include "fmlab/czdecomp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fmlab {

CZOutput cz_decompose(const GridSignal& F, double height) {
  if (!(height > 0.0)) throw std::invalid_argument("decomposition height must be positive");
  const std::size_t n = F.n();
  const int L = F.config.L;

  // prefix sums of the pointwise channel-l2 magnitude; interval averages are
  // difference quotients of these
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double ss = 0.0;
    for (std::size_t c = 0; c < F.channels; ++c) ss += std::norm(F.values[c * n + i]);
    prefix[i + 1] = prefix[i] + std::sqrt(ss);
  }

  CZOutput out;
  out.height = height;
  out.g = F;

  // depth-first stopping: descend while the average stays <= height
  std::vector<std::pair<int, std::uint64_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [level, index] = stack.back();
    stack.pop_back();
    const std::size_t count = n >> level;
    const std::size_t start = index * count;
    const double avg = (prefix[start + count] - prefix[start]) / static_cast<double>(count);
    if (avg <= height) {
      if (level < L) {
        stack.emplace_back(level + 1, 2 * index + 1);
        stack.emplace_back(level + 1, 2 * index);
      }
      continue;
    }
    CZBadPart part;
    part.level = level;
    part.index = index;
    part.start = start;
    part.count = count;
    part.values.resize(F.channels * count);
    for (std::size_t c = 0; c < F.channels; ++c) {
      cplx sum{0.0, 0.0};
      for (std::size_t i = start; i < start + count; ++i) sum += F.values[c * n + i];
      const cplx mean = sum / static_cast<double>(count);  // count is 2^k: exact
      for (std::size_t i = start; i < start + count; ++i) {
        part.values[c * count + (i - start)] = F.values[c * n + i] - mean;
        out.g.values[c * n + i] = mean;
      }
    }
    out.bad.push_back(std::move(part));
  }
  std::sort(out.bad.begin(), out.bad.end(),
            [](const CZBadPart& a, const CZBadPart& b) { return a.start < b.start; });
  return out;
}

CZReport verify_cz(const GridSignal& F, const CZOutput& out) {
  const std::size_t n = F.n();
  const double h = F.config.h;
  if (!(out.g.config == F.config) || out.g.channels != F.channels)
    throw std::logic_error("good part does not match the input layout");

  CZReport report;
  const double f_l1 = lp_norm(F, 1.0);
  report.g_sup_ratio = sup_norm(out.g) / out.height;
  const double g_l2 = lp_norm(out.g, 2.0);
  report.g_l2_ratio = f_l1 > 0.0 ? g_l2 * g_l2 / (out.height * f_l1) : 0.0;

  GridSignal recon = out.g;
  std::size_t cursor = 0;
  double total_measure = 0.0;
  for (const CZBadPart& part : out.bad) {
    if (part.count == 0 || (part.count & (part.count - 1)) != 0)
      throw std::logic_error("bad interval length is not a power of two");
    if (part.start != part.index * part.count || part.start + part.count > n)
      throw std::logic_error("bad interval does not sit on the dyadic tree");
    if (part.start < cursor) throw std::logic_error("bad intervals overlap");
    cursor = part.start + part.count;
    if (part.values.size() != F.channels * part.count)
      throw std::logic_error("bad part has the wrong sample count");

    const double measure = static_cast<double>(part.count) * h;
    total_measure += measure;
    double l1 = 0.0;
    for (std::size_t i = 0; i < part.count; ++i) {
      double ss = 0.0;
      for (std::size_t c = 0; c < F.channels; ++c)
        ss += std::norm(part.values[c * part.count + i]);
      l1 += std::sqrt(ss) * h;
    }
    report.b_l1_ratio = std::max(report.b_l1_ratio, l1 / (out.height * measure));

    for (std::size_t c = 0; c < F.channels; ++c) {
      cplx moment{0.0, 0.0};
      for (std::size_t i = 0; i < part.count; ++i) {
        moment += part.values[c * part.count + i];
        recon.values[c * n + part.start + i] += part.values[c * part.count + i];
      }
      report.max_moment = std::max(report.max_moment, std::abs(moment) * h);
    }
  }
  report.measure_ratio = f_l1 > 0.0 ? out.height * total_measure / f_l1 : 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    double ss = 0.0;
    for (std::size_t c = 0; c < F.channels; ++c)
      ss += std::norm(recon.values[c * n + i] - F.values[c * n + i]);
    report.reconstruction_error = std::max(report.reconstruction_error, std::sqrt(ss));
  }
  return report;
}

}  // namespace fmlab
