#pragma once

#include <Eigen/Core>
#include <utility>

#include "allpay/errors.hpp"

namespace allpay {

using Vec = Eigen::VectorXd;

// Absolute tolerance for equality tests on bids and masses.
inline constexpr double kTol = 1e-12;

inline bool approx_eq(double a, double b, double tol = kTol) {
  return std::abs(a - b) <= tol;
}

// Two players competing over 1-3 items. budgets = (B1, B2), values(i, j) is
// player i+1's value for item j.
struct AuctionProfile {
  int n_items = 0;
  Eigen::Vector2d budgets{0.0, 0.0};
  Eigen::Matrix<double, 2, Eigen::Dynamic> values;

  int items() const { return n_items; }
  // player is 1 or 2 throughout the public surface.
  double budget(int player) const { return budgets(player - 1); }
  double value(int player, int item) const { return values(player - 1, item); }
};

AuctionProfile make_profile(double b1, double b2,
                            std::initializer_list<double> v1,
                            std::initializer_list<double> v2);

// Returns the profile unchanged, or throws invalid_profile with a
// field-level message.
AuctionProfile validate_profile(AuctionProfile profile);

struct RoleAssignment {
  int strong = 0;  // player with the larger budget
  int weak = 0;
};

// Defined only when B1 != B2 (exact comparison); throws otherwise.
RoleAssignment roles(const AuctionProfile& profile);

// caps[j] = min{B1, B2, v1j, v2j}, the common supremum of equilibrium bids.
Vec item_caps(const AuctionProfile& profile);
double item_cap(const AuctionProfile& profile, int item);

enum class TieOutcome { player1_wins, player2_wins, coin_flip };

// Deterministic only when the tie sits at the item cap and the two
// min{B_i, v_ij} values differ; a fair coin otherwise.
TieOutcome tie_break(const AuctionProfile& profile, int item, double tie_bid);

// Win probability of each player on one item given both bids (tie-aware).
std::pair<double, double> win_probabilities(const AuctionProfile& profile,
                                            int item, double bid1, double bid2);

bool bid_feasible(const AuctionProfile& profile, int player, const Vec& bid);

// Expected utilities of a deterministic bid pair; ties contribute their
// expected value, so the result is exact.
std::pair<double, double> pure_utility(const AuctionProfile& profile,
                                       const Vec& bid1, const Vec& bid2);

}  // namespace allpay
