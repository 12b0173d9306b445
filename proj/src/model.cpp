#include "allpay/model.hpp"

#include <cmath>
#include <string>

namespace allpay {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_profile: return "InvalidProfile";
    case ErrorKind::infeasible_bid: return "InfeasibleBid";
    case ErrorKind::mass_not_normalized: return "MassNotNormalized";
    case ErrorKind::support_infeasible: return "SupportInfeasible";
    case ErrorKind::invalid_parameter: return "InvalidParameter";
    case ErrorKind::no_equilibrium: return "NoEquilibrium";
    case ErrorKind::unsupported_regime: return "UnsupportedRegime";
    case ErrorKind::construction_invalid: return "ConstructionInvalid";
    case ErrorKind::precondition_violated: return "PreconditionViolated";
  }
  return "UnknownError";
}

AuctionProfile make_profile(double b1, double b2,
                            std::initializer_list<double> v1,
                            std::initializer_list<double> v2) {
  AuctionProfile p;
  p.n_items = static_cast<int>(v1.size());
  p.budgets << b1, b2;
  p.values.resize(2, static_cast<Eigen::Index>(std::max(v1.size(), v2.size())));
  p.values.setZero();
  Eigen::Index j = 0;
  for (double v : v1) p.values(0, j++) = v;
  j = 0;
  for (double v : v2) {
    if (j >= p.values.cols()) break;
    p.values(1, j++) = v;
  }
  if (v1.size() != v2.size()) p.n_items = -1;  // caught by validate_profile
  return p;
}

AuctionProfile validate_profile(AuctionProfile profile) {
  if (profile.n_items < 1 || profile.n_items > 3)
    throw AuctionError(ErrorKind::invalid_profile,
                       "n_items must be 1, 2, or 3 (got " +
                           std::to_string(profile.n_items) + ")");
  if (profile.values.cols() != profile.n_items)
    throw AuctionError(ErrorKind::invalid_profile,
                       "values dimensions do not match n_items");
  for (int i = 0; i < 2; ++i) {
    double b = profile.budgets(i);
    if (!std::isfinite(b) || b < 0.0)
      throw AuctionError(ErrorKind::invalid_profile,
                         "budgets[" + std::to_string(i) + "] must be a finite non-negative real");
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < profile.n_items; ++j) {
      double v = profile.values(i, j);
      if (!std::isfinite(v) || v <= 0.0)
        throw AuctionError(ErrorKind::invalid_profile,
                           "values[" + std::to_string(i) + "][" + std::to_string(j) +
                               "] must be a finite positive real");
    }
  return profile;
}

RoleAssignment roles(const AuctionProfile& profile) {
  if (profile.budgets(0) == profile.budgets(1))
    throw AuctionError(ErrorKind::precondition_violated,
                       "roles are defined only for distinct budgets");
  if (profile.budgets(0) > profile.budgets(1)) return {1, 2};
  return {2, 1};
}

double item_cap(const AuctionProfile& profile, int item) {
  return std::min({profile.budgets(0), profile.budgets(1),
                   profile.values(0, item), profile.values(1, item)});
}

Vec item_caps(const AuctionProfile& profile) {
  Vec caps(profile.n_items);
  for (int j = 0; j < profile.n_items; ++j) caps(j) = item_cap(profile, j);
  return caps;
}

TieOutcome tie_break(const AuctionProfile& profile, int item, double tie_bid) {
  double cap = item_cap(profile, item);
  if (approx_eq(tie_bid, cap)) {
    double m1 = std::min(profile.budgets(0), profile.values(0, item));
    double m2 = std::min(profile.budgets(1), profile.values(1, item));
    if (!approx_eq(m1, m2)) return m1 > m2 ? TieOutcome::player1_wins : TieOutcome::player2_wins;
  }
  return TieOutcome::coin_flip;
}

std::pair<double, double> win_probabilities(const AuctionProfile& profile,
                                            int item, double bid1, double bid2) {
  if (approx_eq(bid1, bid2)) {
    switch (tie_break(profile, item, bid1)) {
      case TieOutcome::player1_wins: return {1.0, 0.0};
      case TieOutcome::player2_wins: return {0.0, 1.0};
      case TieOutcome::coin_flip: return {0.5, 0.5};
    }
  }
  return bid1 > bid2 ? std::pair{1.0, 0.0} : std::pair{0.0, 1.0};
}

bool bid_feasible(const AuctionProfile& profile, int player, const Vec& bid) {
  if (bid.size() != profile.n_items) return false;
  if (bid.minCoeff() < -kTol) return false;
  return bid.sum() <= profile.budget(player) + kTol;
}

std::pair<double, double> pure_utility(const AuctionProfile& profile,
                                       const Vec& bid1, const Vec& bid2) {
  if (!bid_feasible(profile, 1, bid1))
    throw AuctionError(ErrorKind::infeasible_bid, "player 1 bid violates non-negativity or budget");
  if (!bid_feasible(profile, 2, bid2))
    throw AuctionError(ErrorKind::infeasible_bid, "player 2 bid violates non-negativity or budget");
  double u1 = 0.0, u2 = 0.0;
  for (int j = 0; j < profile.n_items; ++j) {
    auto [p1, p2] = win_probabilities(profile, j, bid1(j), bid2(j));
    u1 += p1 * profile.values(0, j) - bid1(j);
    u2 += p2 * profile.values(1, j) - bid2(j);
  }
  return {u1, u2};
}

}  // namespace allpay
