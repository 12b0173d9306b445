#pragma once

#include <string>
#include <utility>

#include "allpay/strategy.hpp"

namespace allpay {

// Asymmetric-budget construction cases, keyed by whether the strong player's
// value sits above or at each item cap (items ordered so L1 >= L2).
enum class TwoItemCaseTag {
  strong_above_both,   // v_s1 > L1 and v_s2 > L2
  strong_at_both,      // v_s1 = L1 and v_s2 = L2
  strong_above_first,  // v_s1 > L1 and v_s2 = L2
  strong_above_second, // v_s1 = L1 and v_s2 > L2
};

std::string to_string(TwoItemCaseTag tag);

// Construction geometry in the canonical item order (L1 >= L2). Thresholds
// not defined by the matching case are NaN. swapped records whether the
// profile's items were permuted to reach the canonical order.
struct ThresholdSet {
  TwoItemCaseTag case_tag;
  RoleAssignment players;
  double L1 = 0.0, L2 = 0.0;
  double T1, T2, T3, T4;
  bool swapped = false;
};

// Equal budgets, all four values identical: both players spread mass 1
// uniformly over the anti-diagonal from (0, c) to (c, 0), c = min{v, B}.
std::pair<MixedStrategy, MixedStrategy> solve_two_symmetric(const AuctionProfile& profile);

// Classifies an asymmetric-budget profile and computes its thresholds,
// checking every validity inequality the construction implicitly needs;
// throws construction_invalid naming the first violated one.
ThresholdSet compute_thresholds(const AuctionProfile& profile);

std::pair<MixedStrategy, MixedStrategy> solve_two_asymmetric(const AuctionProfile& profile);

// Dispatch: symmetric, asymmetric, or unsupported_regime (equal budgets with
// heterogeneous values have no known construction).
std::pair<MixedStrategy, MixedStrategy> solve_two(const AuctionProfile& profile);

}  // namespace allpay
