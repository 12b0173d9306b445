#pragma once

#include <utility>
#include <vector>

#include "allpay/strategy.hpp"

namespace allpay {

struct VerifierConfig {
  double grid_step = 0.005;
  double critical_offset = 1e-6;  // one-sided probes around atoms/breakpoints
  double tolerance = 1e-6;        // epsilon for the critical-point gain
  bool parallel = false;
};

// Exact expected utility of a pure bid against a mixture, summed item-wise
// over the opponent's marginals (the per-item terms are independent).
double pure_vs_mixed_utility(const AuctionProfile& profile, int player,
                             const Vec& bid, const MixedStrategy& opponent);

// Expected utilities of a strategy pair. Atoms are summed exactly; segment
// expectations subdivide at the opponent's breakpoints so every sub-integrand
// is affine and integrates in closed form.
std::pair<double, double> equilibrium_value(const AuctionProfile& profile,
                                            const MixedStrategy& strategy1,
                                            const MixedStrategy& strategy2);

struct BestResponse {
  Vec bid;
  double value = 0.0;
  double critical_value = 0.0;  // best over analytic candidates only
};

// Maximizes pure_vs_mixed_utility over per-item candidate grids (step plus
// the opponent's atoms/breakpoints probed one-sidedly) combined under the
// budget. The per-item objective is separable, so combination is an exact
// knapsack over sorted per-item curves. Deterministic; value ties resolve to
// the lexicographically smallest bid. extra_critical coordinates (per item)
// are merged into the analytic candidate set.
BestResponse best_response_search(const AuctionProfile& profile, int player,
                                  const MixedStrategy& opponent,
                                  const VerifierConfig& config = {},
                                  const std::vector<std::vector<double>>& extra_critical = {});

// The per-item candidate coordinates the search enumerates (grid plus
// analytic points), for cross-checking the budget combination against
// exhaustive enumeration.
std::vector<std::vector<double>> search_candidates(
    const AuctionProfile& profile, int player, const MixedStrategy& opponent,
    const VerifierConfig& config = {},
    const std::vector<std::vector<double>>& extra_critical = {});

struct PlayerCertificate {
  double value = 0.0;            // expected utility under the candidate pair
  double best_deviation = 0.0;   // best pure deviation found
  double gain = 0.0;             // best_deviation - value
  Vec witness;
  bool pass = false;
  double critical_gain = 0.0;    // gain over analytic candidates
  double grid_gain = 0.0;        // gain over the full candidate set
};

struct EquilibriumCertificate {
  PlayerCertificate player1;
  PlayerCertificate player2;
  VerifierConfig config;
  bool pass = false;
};

// Certifies a candidate pair: pass iff, for both players, the deviation gain
// is at most tolerance on the analytic candidates and at most 2*grid_step on
// the grid. Failure is an outcome, not an error.
EquilibriumCertificate verify_equilibrium(const AuctionProfile& profile,
                                          const MixedStrategy& strategy1,
                                          const MixedStrategy& strategy2,
                                          const VerifierConfig& config = {});

}  // namespace allpay
