#pragma once

#include <optional>
#include <string>
#include <utility>

#include "allpay/strategy.hpp"

namespace allpay {

enum class SingleItemTag {
  pure_equilibrium,             // B1 = B2 < half the smaller value
  boundary_family,              // B1 = B2 = half the smaller value
  asymmetric_strong_high_value, // B1 != B2, strong player's value above the cap
  asymmetric_strong_low_value,  // B1 != B2, strong player's value equals the cap
  non_existence_regime,         // B1 = B2 above half the smaller value
};

std::string to_string(SingleItemTag tag);

struct SingleItemCase {
  SingleItemTag tag;
  std::optional<RoleAssignment> players;  // set for the asymmetric tags
  double cap = 0.0;                       // L = min{B1, B2, v1, v2}
};

// The tags partition the single-item parameter space. Budget equality is
// tested exactly: the case structure is discontinuous there and a tolerance
// would misclassify near-boundary profiles.
SingleItemCase classify_single(const AuctionProfile& profile);

// Constructs the equilibrium pair for every tag except the non-existence
// regime. boundary_mass selects a member of the boundary family (the
// probability the low-value player puts on 0, in [0, 1 - 2L/v_other]);
// defaults to the upper end of the range.
std::pair<MixedStrategy, MixedStrategy> solve_single(
    const AuctionProfile& profile, std::optional<double> boundary_mass = {});

// Closed-form equilibrium utilities (at the default boundary mass).
std::pair<double, double> single_equilibrium_value(const AuctionProfile& profile);

}  // namespace allpay
