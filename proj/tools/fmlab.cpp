// Command line front end: file-based access to the library operations plus
// the sweep harness.  Every JSON report carries schema-version "1".
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fmlab/counterexamples.hpp"
#include "fmlab/czdecomp.hpp"
#include "fmlab/dyadic.hpp"
#include "fmlab/experiments.hpp"
#include "fmlab/grid.hpp"
#include "fmlab/io.hpp"
#include "fmlab/multiplier.hpp"
#include "fmlab/norms.hpp"
#include "fmlab/squarefn.hpp"

namespace {

using nlohmann::ordered_json;
using namespace fmlab;

struct GlobalOpts {
  int grid_L = 12;
  double spacing = 1.0 / 16.0;
  std::uint64_t seed = 0;
  std::string out;
};

void emit_json(const ordered_json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  FILE* fp = std::fopen(out.c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot open " + out);
  std::fwrite(text.data(), 1, text.size(), fp);
  std::fclose(fp);
}

std::string require_out(const GlobalOpts& g, const char* who) {
  if (g.out.empty())
    throw CLI::ValidationError(std::string(who) + " needs --out");
  return g.out;
}

Symbol symbol_from_file(const std::string& path) {
  const Spectrum sp = read_spectrum(path);
  Symbol m = make_symbol(sp.config, sp.channels);
  m.values = sp.values;
  return m;
}

void symbol_to_file(const std::string& path, const Symbol& m) {
  Spectrum sp;
  sp.config = m.config;
  sp.channels = m.channels;
  sp.origin = 0.0;
  sp.values = m.values;
  write_spectrum(path, sp);
}

// hex bitmask, least significant digit = cells 0..3
DyadicSet set_from_hex(std::string hex, int level) {
  if (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) hex.erase(0, 2);
  if (hex.empty()) throw std::invalid_argument("empty set bitmask");
  DyadicSet E = make_dyadic_set(level);
  const std::size_t cells = E.cells.size();
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[hex.size() - 1 - d];
    int nibble = 0;
    if (c >= '0' && c <= '9') nibble = c - '0';
    else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') nibble = c - 'A' + 10;
    else throw std::invalid_argument("bitmask is not hex");
    for (int b = 0; b < 4; ++b) {
      if (!((nibble >> b) & 1)) continue;
      const std::size_t cell = 4 * d + static_cast<std::size_t>(b);
      if (cell >= cells)
        throw std::invalid_argument("bitmask has cells beyond level " +
                                    std::to_string(level));
      E.cells[cell] = 1;
    }
  }
  return E;
}

std::optional<Region> region_of(const std::vector<double>& r) {
  if (r.empty()) return std::nullopt;
  return Region{r[0], r[1]};
}

// ---- subcommand bodies ------------------------------------------------------

void run_apply(const GlobalOpts& g, const std::string& symbol_path,
               const std::string& signal_path) {
  const Symbol m = symbol_from_file(symbol_path);
  const GridSignal f = load_signal(signal_path);
  save_signal(require_out(g, "apply"), apply_multiplier(m, f));
}

void run_norm(const std::string& space, const std::string& signal_path, double p,
              double q, double r, double s, const std::vector<double>& region) {
  const GridSignal f = load_signal(signal_path);
  const std::optional<Region> reg = region_of(region);
  double value = 0.0;
  if (space == "lorentz") {
    value = lorentz_norm(f, {p, q}, reg);
  } else if (space == "orlicz") {
    value = orlicz_llogr(f, {r, reg});
  } else if (space == "weak-l1") {
    value = weak_l1_norm(f, reg);
  } else if (space == "dyadic-l12") {
    if (reg) throw std::invalid_argument("dyadic-l12 has no region form");
    value = dyadic_l12(f);
  } else {  // s-variation, on the channel-0 samples
    std::vector<cplx> samples;
    for (std::size_t j = 0; j < f.n(); ++j) {
      const double x = f.coordinate(j);
      if (reg && (x < reg->lo || x >= reg->hi)) continue;
      samples.push_back(f.values[j]);
    }
    value = s_variation(samples, s);
  }
  std::printf("%.17g\n", value);
}

void run_redistribute(const GlobalOpts& g, const std::string& hex, int level,
                      double eps) {
  const DyadicSet E = set_from_hex(hex, level);
  const RedistributionOutput out = redistribute_char(E, eps);
  const CharReport rep = verify_char(E, out);

  ordered_json doc;
  doc["schema-version"] = "1";
  doc["level"] = level;
  doc["eps"] = eps;
  doc["set_measure"] = rep.set_measure;
  doc["mean2_max_slack"] = rep.mean2_max_slack;
  doc["equality_max_gap"] = rep.equality_max_gap;
  doc["square_l1"] = rep.square_l1;
  doc["square2_ratio"] = rep.square2_ratio;
  doc["stopping"] = ordered_json::array();
  for (const DyadicInterval& I : out.stopping)
    doc["stopping"].push_back({{"level", I.level}, {"index", I.index}});
  doc["intervals"] = ordered_json::array();
  for (int j = 0; j < static_cast<int>(out.levels.size()); ++j) {
    const std::size_t width = out.cells() >> j;
    for (std::size_t idx = 0; idx * width < out.cells(); ++idx) {
      ordered_json vals = ordered_json::array();
      bool any = false;
      for (std::size_t c = 0; c < width; ++c) {
        const double v = out.levels[static_cast<std::size_t>(j)][idx * width + c];
        any = any || v != 0.0;
        vals.push_back(v);
      }
      if (any)
        doc["intervals"].push_back(
            {{"level", j}, {"index", idx}, {"values", std::move(vals)}});
    }
  }
  emit_json(doc, g.out);
}

void run_squarefn(const GlobalOpts& g, const std::string& signal_path,
                  int theta_nodes, double eps) {
  const std::string prefix = require_out(g, "squarefn");
  const GridSignal f = load_signal(signal_path);
  const SquareFnOutput out = continuous_squarefn(f, theta_nodes, eps);

  GridSignal stack = make_signal(f.config, out.F.size(), f.origin);
  ordered_json js = ordered_json::array();
  std::size_t c = 0;
  for (const auto& [j, Fj] : out.F) {
    js.push_back(j);
    std::copy(Fj.values.begin(), Fj.values.end(),
              stack.values.begin() + static_cast<std::ptrdiff_t>(c * stack.n()));
    ++c;
  }
  write_signal(prefix + ".bin", stack);

  ordered_json doc;
  doc["schema-version"] = "1";
  doc["theta_nodes"] = out.theta_nodes;
  doc["unit_level"] = out.unit_level;
  doc["j"] = std::move(js);
  doc["fj_norm"] = fj_norm(out);
  doc["fj_support"] = fj_support_constant(f, out);
  emit_json(doc, prefix + ".json");
}

void run_czd(const GlobalOpts& g, const std::string& signal_path, double height) {
  const GridSignal f = load_signal(signal_path);
  const CZOutput out = cz_decompose(f, height);
  const CZReport rep = verify_cz(f, out);

  ordered_json doc;
  doc["schema-version"] = "1";
  doc["height"] = height;
  doc["intervals"] = ordered_json::array();
  for (const CZBadPart& part : out.bad) {
    double mass = 0.0;
    for (std::size_t i = 0; i < part.count; ++i) {
      double sq = 0.0;
      for (std::size_t ch = 0; ch < f.channels; ++ch)
        sq += std::norm(part.values[ch * part.count + i]);
      mass += std::sqrt(sq) * f.config.h;
    }
    doc["intervals"].push_back(
        {{"level", part.level}, {"index", part.index}, {"l1_mass", mass}});
  }
  doc["g_sup_ratio"] = rep.g_sup_ratio;
  doc["g_l2_ratio"] = rep.g_l2_ratio;
  doc["b_l1_ratio"] = rep.b_l1_ratio;
  doc["measure_ratio"] = rep.measure_ratio;
  doc["reconstruction_error"] = rep.reconstruction_error;
  doc["max_moment"] = rep.max_moment;
  emit_json(doc, g.out);
}

void run_counterexample(const GlobalOpts& g, const std::string& family, int N,
                        double q, double alpha, double beta, bool randomize) {
  const std::string prefix = require_out(g, "counterexample");
  const CounterexampleSpec spec{family_from_name(family), N, q, alpha, beta, g.seed};
  const GridConfig config = make_config(g.grid_L, g.spacing);
  Counterexample ce = generate(spec, config);
  if (randomize) ce.m = randomize_signs(ce.m, g.seed);

  symbol_to_file(prefix + ".symbol.bin", ce.m);
  if (ce.companion) write_signal(prefix + ".signal.bin", *ce.companion);

  ordered_json doc;
  doc["schema-version"] = "1";
  doc["family"] = family_name(spec.family);
  doc["N"] = N;
  doc["q"] = q;
  doc["seed"] = g.seed;
  doc["grid_n"] = config.n();
  doc["channels"] = ce.m.channels;
  doc["atoms"] = ce.m.atoms.size();
  doc["companion"] = ce.companion.has_value();
  doc["note"] = ce.note;
  try {
    const KernelProfile kp = kernel_profile(ce.m, spec);
    doc["kernel_quantity"] = kp.quantity;
    doc["kernel_value"] = kp.value;
  } catch (const std::exception& e) {
    doc["kernel_skipped"] = e.what();
  }
  emit_json(doc, prefix + ".json");
}

void run_sweep_cmd(const GlobalOpts& g, const std::string& experiment,
                   std::vector<double> params, double p, double q, int theta_nodes,
                   int trials, int threads) {
  SweepSpec spec;
  spec.experiment = experiment;
  spec.params = params.empty() ? sweep_default_params(experiment) : std::move(params);
  spec.seed = g.seed;
  spec.p = p;
  spec.q = q;
  spec.theta_nodes = theta_nodes;
  spec.trials = trials;
  spec.threads = threads;
  spec.out_prefix = g.out;
  const SweepReport report = run_sweep(spec);
  std::fputs(report.json.c_str(), stdout);
}

void run_verify(const GlobalOpts& g, const std::string& estimate,
                const std::string& signal_path, double param) {
  if (estimate == "zygmund") {
    if (signal_path.empty())
      throw CLI::ValidationError("verify --estimate zygmund needs --signal");
    ordered_json doc;
    doc["schema-version"] = "1";
    doc["estimate"] = estimate;
    doc["ratio"] = verify_zygmund(load_signal(signal_path));
    emit_json(doc, g.out);
    return;
  }
  SweepSpec spec;
  if (estimate == "l12") {
    spec.experiment = "l12_random";
    spec.params = {param > 0 ? param : 13.0};
  } else if (estimate == "main-overlap") {
    spec.experiment = "main_overlap";
    spec.params = {param > 0 ? param : 4.0};
  } else {  // main-grid
    spec.experiment = "main_grid";
    spec.params = {param > 0 ? param : 13.0};
  }
  spec.seed = g.seed;
  spec.out_prefix = g.out;
  const SweepReport report = run_sweep(spec);
  std::fputs(report.json.c_str(), stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fmlab: a numerical laboratory for one-dimensional Fourier "
               "multipliers near L^1"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; flags win");

  GlobalOpts g;
  app.add_option("--grid-L", g.grid_L, "log2 sample count of the working grid");
  app.add_option("--spacing", g.spacing, "sample spacing of the working grid");
  app.add_option("--seed", g.seed, "seed for every randomized draw");
  app.add_option("--out", g.out, "output file or prefix");

  // apply
  auto* apply = app.add_subcommand("apply", "apply a symbol file to a signal file");
  std::string apply_symbol, apply_signal;
  apply->add_option("--symbol", apply_symbol, "symbol file (spectrum layout)")
      ->required();
  apply->add_option("--signal", apply_signal, "input signal (.bin or .csv)")
      ->required();
  apply->callback([&] { run_apply(g, apply_symbol, apply_signal); });

  // norm
  auto* norm = app.add_subcommand("norm", "print a norm of a signal file");
  std::string norm_space, norm_signal;
  double norm_p = 1.0, norm_q = 1.0, norm_r = 0.5, norm_s = 1.0;
  std::vector<double> norm_region;
  norm->add_option("--space", norm_space, "which norm")
      ->required()
      ->check(CLI::IsMember(
          {"lorentz", "orlicz", "weak-l1", "dyadic-l12", "s-variation"}));
  norm->add_option("--p", norm_p, "primary Lorentz exponent");
  norm->add_option("--q", norm_q, "secondary Lorentz exponent (inf allowed)");
  norm->add_option("--r", norm_r, "log power of the Orlicz space");
  norm->add_option("--s", norm_s, "variation exponent");
  norm->add_option("--region", norm_region, "restrict to [a,b)")
      ->delimiter(',')
      ->expected(2);
  norm->add_option("signal", norm_signal, "signal file")->required();
  norm->callback([&] {
    run_norm(norm_space, norm_signal, norm_p, norm_q, norm_r, norm_s, norm_region);
  });

  // redistribute
  auto* redis = app.add_subcommand(
      "redistribute", "redistribute a dyadic indicator and report the slack");
  std::string redis_set;
  int redis_level = 4;
  double redis_eps = 1.0 / 256.0;
  redis->add_option("--set", redis_set, "hex bitmask of level-N cells")->required();
  redis->add_option("--level", redis_level, "dyadic resolution level")->required();
  redis->add_option("--eps", redis_eps, "stopping threshold");
  redis->callback([&] { run_redistribute(g, redis_set, redis_level, redis_eps); });

  // squarefn
  auto* sq = app.add_subcommand(
      "squarefn", "continuous square function of a signal; --out prefix");
  std::string sq_signal;
  int sq_theta = 32;
  double sq_eps = 1.0 / 256.0;
  sq->add_option("--signal", sq_signal, "input signal")->required();
  sq->add_option("--theta-nodes", sq_theta, "translation quadrature nodes");
  sq->add_option("--eps", sq_eps, "redistribution threshold");
  sq->callback([&] { run_squarefn(g, sq_signal, sq_theta, sq_eps); });

  // czd
  auto* czd = app.add_subcommand(
      "czd", "dyadic Calderon-Zygmund decomposition of a signal");
  std::string czd_signal;
  double czd_height = 1.0;
  czd->add_option("--signal", czd_signal, "input signal")->required();
  czd->add_option("--height", czd_height, "decomposition height")->required();
  czd->callback([&] { run_czd(g, czd_signal, czd_height); });

  // counterexample
  auto* ce = app.add_subcommand(
      "counterexample", "build a named symbol family member; --out prefix");
  std::string ce_family;
  int ce_N = 1;
  double ce_q = 2.0, ce_alpha = 0.5, ce_beta = 1.0;
  bool ce_randomize = false;
  ce->add_option("--family", ce_family, "family id")
      ->required()
      ->check(CLI::IsMember({"m0", "mN", "mPrimeN", "mDoublePrimeN",
                             "mTriplePrimeN", "hirschman", "hilbertTest"}));
  ce->add_option("--N", ce_N, "scale count");
  ce->add_option("--q", ce_q, "exponent of the packed family");
  ce->add_option("--alpha", ce_alpha, "oscillation exponent");
  ce->add_option("--beta", ce_beta, "decay exponent");
  ce->add_flag("--randomize", ce_randomize, "randomize channel signs with --seed");
  ce->callback([&] {
    run_counterexample(g, ce_family, ce_N, ce_q, ce_alpha, ce_beta, ce_randomize);
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a named experiment over a grid");
  std::string sweep_experiment;
  std::vector<double> sweep_params;
  double sweep_p = 1.2, sweep_q = 4.0;
  int sweep_theta = 32, sweep_trials = 8, sweep_threads = 0;
  sweep->add_option("--experiment", sweep_experiment, "experiment id")->required();
  sweep->add_option("--params", sweep_params, "parameter grid (default: canonical)")
      ->delimiter(',');
  sweep->add_option("--p", sweep_p, "Lebesgue exponent");
  sweep->add_option("--q", sweep_q, "secondary exponent");
  sweep->add_option("--theta-nodes", sweep_theta, "square-function quadrature");
  sweep->add_option("--trials", sweep_trials, "random instances per point");
  sweep->add_option("--threads", sweep_threads, "worker count (0 = hardware)");
  sweep->callback([&] {
    run_sweep_cmd(g, sweep_experiment, sweep_params, sweep_p, sweep_q, sweep_theta,
                  sweep_trials, sweep_threads);
  });

  // verify
  auto* verify = app.add_subcommand(
      "verify", "run one inequality verifier and print its report");
  std::string verify_estimate, verify_signal;
  double verify_param = 0.0;
  verify->add_option("--estimate", verify_estimate, "which estimate")
      ->required()
      ->check(CLI::IsMember({"zygmund", "l12", "main-overlap", "main-grid"}));
  verify->add_option("--signal", verify_signal, "signal file (zygmund)");
  verify->add_option("--param", verify_param,
                     "suite parameter (log2n or overlap)");
  verify->callback([&] { run_verify(g, verify_estimate, verify_signal, verify_param); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fmlab: %s\n", e.what());
    return 1;
  }
  return 0;
}
