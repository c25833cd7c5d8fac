#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fmlab/grid.hpp"
#include "fmlab/multiplier.hpp"

namespace fmlab {

enum class Family { m0, mN, mPrimeN, mDoublePrimeN, mTriplePrimeN, hirschman, hilbertTest };

Family family_from_name(const std::string& name);
std::string family_name(Family family);

struct CounterexampleSpec {
  Family family = Family::m0;
  int N = 1;
  double q = 2.0;        // mTriplePrimeN exponent
  double alpha = 0.5;    // hirschman phase exponent
  double beta = 1.0;     // hirschman decay exponent
  std::uint64_t seed = 0;
};

struct Counterexample {
  Symbol m;
  std::optional<GridSignal> companion;
  std::string note;  // truncation bounds and other caveats, empty if none
};

// base symbol chi_{[1,oo)}(xi) psi(xi - 1) evaluated pointwise
double m0_value(double xi);

// Build the family member on the given grid.  The symbol's band and
// resolution requirements are enforced strictly (errors name the violated
// scale); the companion signal is attached when the family prescribes one
// and the grid affords it, otherwise the note records why it was skipped.
Counterexample generate(const CounterexampleSpec& spec, const GridConfig& config);

// sum_j eps_j m^(j) with iid signs drawn from the seeded generator
Symbol randomize_signs(const Symbol& m, std::uint64_t seed);

struct KernelProfile {
  GridSignal kernel;    // per-channel inverse transform of the symbol
  std::string quantity; // headline diagnostic name
  double value = 0.0;
};

// family-specific kernel diagnostics; requires T >= 4 * 2^N for the
// families whose asymptotics live at spatial scale 2^N
KernelProfile kernel_profile(const Symbol& m, const CounterexampleSpec& spec);

// reference kernel of the base symbol on a wide fine grid (used by the
// dilation identity below); values cover the torus [0, T)
GridSignal reference_kappa0(int L, double h);

// || |m_N^| ||_{L^{1,q}([0,1])} without materializing the vector symbol:
// channel j has kernel 2^j kappa0(2^j x), so the channel-l2 magnitude is
// (sum_j 4^j |kappa0(2^j x)|^2)^{1/2}, evaluated from the reference kernel
// on a 2^eval_log2-point grid over [0,1)
double mn_l1q_via_dilation(int N, double q, const GridSignal& kappa0, int eval_log2 = 16);

}  // namespace fmlab
