#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fmlab/grid.hpp"
#include "fmlab/multiplier.hpp"

namespace fmlab {

// (sum_{j >= 0} |f^(2^j)|^2)^{1/2} / ||f||_{L log^{1/2} L}; f lives on the
// unit torus (T = 1).  Returns inf when only the denominator vanishes.
double verify_zygmund(const GridSignal& f);

// instance of the square-function convolution inequality: a kernel scale a
// (phi_a(x) = a (1 + a^2 x^2)^{-s}) and a nonnegative profile
struct L12Instance {
  double scale = 1.0;
  GridSignal F;
};
struct RatioReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // 0 when both sides vanish
};
// || (sum_I |F_I * phi_I|^2)^{1/2} ||_{L^{1,2}}  vs  || (sum_I F_I^2)^{1/2} ||_1
RatioReport verify_l12_lemma(const std::vector<L12Instance>& instances,
                             double phi_exponent = 0.75);

enum class MainVariant { weak_l1, l12 };
struct MainEstimateReport {
  double lhs = 0.0;
  double rhs = 0.0;
  int overlap = 0;
  double ratio = 0.0;
};
// || sum_I T_{m_I} f_I ||_{L^{1,q}} vs N^{1/2} || (sum_I F_I^2)^{1/2} ||_1
// with f_I = a_I (F_I * phi_{|I|}), |a_I| <= 1, N the family overlap
MainEstimateReport verify_main_estimate(const IntervalFamily& family,
                                        const std::vector<GridSignal>& F,
                                        const std::vector<cplx>& a,
                                        MainVariant variant,
                                        double phi_exponent = 0.75);

struct OperatorNormEstimate {
  double value = 0.0;
  std::string trial;  // input achieving the maximum
};
// empirical lower bound for ||T_m||_{p -> p}: the best ratio over a fixed
// trial menu (plateau, box, haar atom, spikes, seeded lacunary random
// signs) plus any caller-supplied companions
OperatorNormEstimate measure_operator_norm(
    const Symbol& m, double p, int trials, std::uint64_t seed,
    const std::vector<std::pair<std::string, GridSignal>>& extra = {});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
};
// least squares on (log x, log y); pairs with a nonpositive coordinate are
// skipped; an exactly flat cloud reports r2 = 1
SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& xy);

struct SweepSpec {
  std::string experiment;
  std::vector<double> params;  // must be nonempty
  std::uint64_t seed = 0;
  double p = 1.2;        // Lebesgue exponent, where used
  double q = 4.0;        // secondary exponent (triple-prime family)
  int theta_nodes = 32;  // square-function quadrature
  int trials = 8;        // per-point random-instance count, where used
  int threads = 0;       // 0 = hardware concurrency
  std::string out_prefix;  // when nonempty, writes <prefix>.csv and <prefix>.json
};

struct SweepRow {
  std::string experiment;
  std::string param_name;
  double param_value = 0.0;
  std::string quantity;
  double value = 0.0;
  std::uint64_t grid_n = 0;
  std::uint64_t seed = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::string param_name;
  std::string headline;  // quantity the fit ran on
  SlopeFit fit;
  std::string csv;
  std::string json;
};

// execute the named experiment across the parameter grid; points run on a
// work queue, rows are assembled in parameter order regardless of
// completion order, and every draw is derived from the spec seed
SweepReport run_sweep(const SweepSpec& spec);

const std::vector<std::string>& sweep_catalog();
std::vector<double> sweep_default_params(const std::string& experiment);

std::string render_csv(const std::vector<SweepRow>& rows);
std::string render_report_json(const SweepSpec& spec, const SweepReport& report);

}  // namespace fmlab
