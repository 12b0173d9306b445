#include "allpay/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace allpay {
namespace {

// Opponent marginals computed once per query; the per-item utility of a bid
// depends on the opponent only through them.
struct OpponentView {
  const AuctionProfile* profile;
  int player;  // the bidding player
  std::vector<MarginalCdf> marginals;

  OpponentView(const AuctionProfile& p, int bidding_player, const MixedStrategy& opponent)
      : profile(&p), player(bidding_player) {
    marginals.reserve(static_cast<size_t>(p.n_items));
    for (int j = 0; j < p.n_items; ++j) marginals.push_back(marginal_of(opponent, j));
  }

  double item_utility(int item, double x) const {
    const MarginalCdf& m = marginals[static_cast<size_t>(item)];
    double v = profile->value(player, item);
    double u = m.left_limit(x) * v - x;
    double atom = m.atom_mass_at(x);
    if (atom > 0.0) {
      TieOutcome t = tie_break(*profile, item, x);
      double weight =
          t == TieOutcome::coin_flip
              ? 0.5
              : ((t == TieOutcome::player1_wins) == (player == 1) ? 1.0 : 0.0);
      u += atom * weight * v;
    }
    return u;
  }

  double utility(const Vec& bid) const {
    double u = 0.0;
    for (int j = 0; j < profile->n_items; ++j) u += item_utility(j, bid(j));
    return u;
  }
};

double expected_utility(const AuctionProfile& profile, const MixedStrategy& own,
                        const OpponentView& view) {
  double total = 0.0;
  for (const auto& a : own.atoms) total += a.prob * view.utility(a.point);
  for (const auto& s : own.segments) {
    // Split [0,1] wherever a moving coordinate crosses an opponent
    // breakpoint; between cuts the integrand is affine, so the midpoint
    // rule is exact. Pinned coordinates keep their atom-aware value.
    std::vector<double> cuts = {0.0, 1.0};
    for (int j = 0; j < profile.n_items; ++j) {
      double d = s.b(j) - s.a(j);
      if (std::abs(d) <= kTol) continue;
      for (double bp : view.marginals[static_cast<size_t>(j)].breakpoints()) {
        double t = (bp - s.a(j)) / d;
        if (t > 1e-12 && t < 1.0 - 1e-12) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-14; }),
               cuts.end());
    double integral = 0.0;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      double mid = 0.5 * (cuts[k] + cuts[k + 1]);
      Vec x = s.a + mid * (s.b - s.a);
      integral += (cuts[k + 1] - cuts[k]) * view.utility(x);
    }
    total += s.prob * integral;
  }
  return total;
}

struct Candidate {
  double x;
  double u;
  bool critical;
};

// Per-item candidate curve sorted by bid with running maxima, so the best
// completion under a residual budget is a binary search away.
struct ItemCurve {
  std::vector<Candidate> cand;        // sorted by x
  std::vector<double> prefix_best;    // max utility among cand[0..k]
  std::vector<double> prefix_arg;     // smallest x attaining prefix_best[k]
  std::vector<Candidate> crit;        // critical subset, sorted
  std::vector<double> crit_prefix_best;

  void finalize() {
    prefix_best.resize(cand.size());
    prefix_arg.resize(cand.size());
    double best = -std::numeric_limits<double>::infinity(), arg = 0.0;
    for (size_t k = 0; k < cand.size(); ++k) {
      if (cand[k].u > best) { best = cand[k].u; arg = cand[k].x; }
      prefix_best[k] = best;
      prefix_arg[k] = arg;
      if (cand[k].critical) crit.push_back(cand[k]);
    }
    crit_prefix_best.resize(crit.size());
    best = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < crit.size(); ++k) {
      best = std::max(best, crit[k].u);
      crit_prefix_best[k] = best;
    }
  }

  // Largest index with x <= limit (+slack), or -1.
  static int upper_index(const std::vector<Candidate>& v, double limit) {
    int lo = 0, hi = static_cast<int>(v.size()) - 1, ans = -1;
    double lim = limit + kTol;
    while (lo <= hi) {
      int mid = (lo + hi) / 2;
      if (v[static_cast<size_t>(mid)].x <= lim) { ans = mid; lo = mid + 1; }
      else hi = mid - 1;
    }
    return ans;
  }
};

void validate_config(const VerifierConfig& config) {
  if (!(config.grid_step > 0.0))
    throw AuctionError(ErrorKind::invalid_parameter, "grid_step must be positive");
  if (!(config.critical_offset > 0.0 && config.critical_offset < config.grid_step))
    throw AuctionError(ErrorKind::invalid_parameter,
                       "critical_offset must lie in (0, grid_step)");
  if (config.tolerance < 0.0)
    throw AuctionError(ErrorKind::invalid_parameter, "tolerance must be non-negative");
}

ItemCurve build_curve(const OpponentView& view, int item, double budget,
                      const VerifierConfig& config, const std::vector<double>& extra) {
  const MarginalCdf& m = view.marginals[static_cast<size_t>(item)];
  double cap = item_cap(*view.profile, item);
  double upper = std::min(budget, std::max(cap, m.sup_support() + config.critical_offset));

  std::vector<std::pair<double, bool>> xs;  // (coordinate, critical)
  auto push = [&](double x, bool critical) {
    x = std::clamp(x, 0.0, upper);
    xs.emplace_back(x, critical);
  };
  push(0.0, true);
  push(cap, true);
  push(upper, true);
  for (double bp : m.breakpoints()) {
    push(bp - config.critical_offset, true);
    push(bp, true);
    push(bp + config.critical_offset, true);
  }
  for (double x : extra) push(x, true);
  for (double x = config.grid_step; x < upper; x += config.grid_step) push(x, false);

  std::sort(xs.begin(), xs.end());
  ItemCurve curve;
  for (const auto& [x, critical] : xs) {
    if (!curve.cand.empty() && x - curve.cand.back().x <= 1e-15) {
      curve.cand.back().critical |= critical;
      continue;
    }
    curve.cand.push_back({x, view.item_utility(item, x), critical});
  }
  curve.finalize();
  return curve;
}

struct SearchAccumulator {
  double best = -std::numeric_limits<double>::infinity();
  Vec witness;

  void offer(double value, const Vec& bid) {
    if (value > best) {
      best = value;
      witness = bid;
    }
  }
};

// Best over the full candidate product set under the budget, iterating the
// leading coordinates in ascending order so the first maximum found is the
// lexicographically smallest witness.
SearchAccumulator combine_full(const std::vector<ItemCurve>& curves, double budget,
                               size_t lo1, size_t hi1) {
  SearchAccumulator acc;
  size_t n = curves.size();
  if (n == 1) {
    Vec bid(1);
    for (size_t i = lo1; i < hi1; ++i) {
      bid(0) = curves[0].cand[i].x;
      acc.offer(curves[0].cand[i].u, bid);
    }
    return acc;
  }
  if (n == 2) {
    Vec bid(2);
    for (size_t i = lo1; i < hi1; ++i) {
      const Candidate& c1 = curves[0].cand[i];
      int k = ItemCurve::upper_index(curves[1].cand, budget - c1.x);
      if (k < 0) continue;
      bid(0) = c1.x;
      bid(1) = curves[1].prefix_arg[static_cast<size_t>(k)];
      acc.offer(c1.u + curves[1].prefix_best[static_cast<size_t>(k)], bid);
    }
    return acc;
  }
  Vec bid(3);
  const auto& c3 = curves[2].cand;
  for (size_t i = lo1; i < hi1; ++i) {
    const Candidate& c1 = curves[0].cand[i];
    double rem1 = budget - c1.x;
    if (rem1 < -kTol) continue;
    // Third-coordinate pointer shrinks monotonically as x2 grows.
    int k3 = ItemCurve::upper_index(c3, rem1);
    for (const Candidate& c2 : curves[1].cand) {
      double rem2 = rem1 - c2.x;
      if (rem2 < -kTol) break;
      while (k3 >= 0 && c3[static_cast<size_t>(k3)].x > rem2 + kTol) --k3;
      if (k3 < 0) break;
      bid(0) = c1.x;
      bid(1) = c2.x;
      bid(2) = curves[2].prefix_arg[static_cast<size_t>(k3)];
      acc.offer(c1.u + c2.u + curves[2].prefix_best[static_cast<size_t>(k3)], bid);
    }
    // k3 was consumed left-to-right for this c1; recompute next round.
  }
  return acc;
}

double combine_critical(const std::vector<ItemCurve>& curves, double budget) {
  double best = -std::numeric_limits<double>::infinity();
  size_t n = curves.size();
  if (n == 1) {
    for (const Candidate& c : curves[0].crit) best = std::max(best, c.u);
    return best;
  }
  if (n == 2) {
    for (const Candidate& c1 : curves[0].crit) {
      int k = ItemCurve::upper_index(curves[1].crit, budget - c1.x);
      if (k >= 0) best = std::max(best, c1.u + curves[1].crit_prefix_best[static_cast<size_t>(k)]);
    }
    return best;
  }
  for (const Candidate& c1 : curves[0].crit)
    for (const Candidate& c2 : curves[1].crit) {
      double rem = budget - c1.x - c2.x;
      if (rem < -kTol) continue;
      int k = ItemCurve::upper_index(curves[2].crit, rem);
      if (k >= 0)
        best = std::max(best, c1.u + c2.u + curves[2].crit_prefix_best[static_cast<size_t>(k)]);
    }
  return best;
}

}  // namespace

double pure_vs_mixed_utility(const AuctionProfile& profile, int player,
                             const Vec& bid, const MixedStrategy& opponent) {
  if (!bid_feasible(profile, player, bid))
    throw AuctionError(ErrorKind::infeasible_bid,
                       "bid violates non-negativity or the player's budget");
  OpponentView view(profile, player, opponent);
  return view.utility(bid);
}

std::pair<double, double> equilibrium_value(const AuctionProfile& profile,
                                            const MixedStrategy& strategy1,
                                            const MixedStrategy& strategy2) {
  OpponentView view2(profile, 1, strategy2);
  OpponentView view1(profile, 2, strategy1);
  return {expected_utility(profile, strategy1, view2),
          expected_utility(profile, strategy2, view1)};
}

std::vector<std::vector<double>> search_candidates(
    const AuctionProfile& profile, int player, const MixedStrategy& opponent,
    const VerifierConfig& config, const std::vector<std::vector<double>>& extra_critical) {
  OpponentView view(profile, player, opponent);
  double budget = profile.budget(player);
  std::vector<std::vector<double>> out;
  for (int j = 0; j < profile.n_items; ++j) {
    std::vector<double> extra;
    if (static_cast<size_t>(j) < extra_critical.size()) extra = extra_critical[static_cast<size_t>(j)];
    ItemCurve curve = build_curve(view, j, budget, config, extra);
    std::vector<double> xs;
    xs.reserve(curve.cand.size());
    for (const Candidate& c : curve.cand) xs.push_back(c.x);
    out.push_back(std::move(xs));
  }
  return out;
}

BestResponse best_response_search(const AuctionProfile& profile, int player,
                                  const MixedStrategy& opponent,
                                  const VerifierConfig& config,
                                  const std::vector<std::vector<double>>& extra_critical) {
  validate_config(config);
  OpponentView view(profile, player, opponent);
  double budget = profile.budget(player);
  std::vector<ItemCurve> curves;
  for (int j = 0; j < profile.n_items; ++j) {
    std::vector<double> extra;
    if (static_cast<size_t>(j) < extra_critical.size()) extra = extra_critical[static_cast<size_t>(j)];
    curves.push_back(build_curve(view, j, budget, config, extra));
  }

  size_t n1 = curves[0].cand.size();
  SearchAccumulator acc;
  unsigned workers = config.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  if (workers <= 1 || n1 < 64) {
    acc = combine_full(curves, budget, 0, n1);
  } else {
    std::vector<std::future<SearchAccumulator>> parts;
    size_t chunk = (n1 + workers - 1) / workers;
    for (size_t lo = 0; lo < n1; lo += chunk) {
      size_t hi = std::min(n1, lo + chunk);
      parts.push_back(std::async(std::launch::async, combine_full, std::cref(curves),
                                 budget, lo, hi));
    }
    // Chunks are merged in ascending order, preserving the tie rule.
    for (auto& f : parts) {
      SearchAccumulator part = f.get();
      if (part.witness.size() > 0) acc.offer(part.best, part.witness);
    }
  }

  BestResponse out;
  out.bid = acc.witness;
  out.value = acc.best;
  out.critical_value = combine_critical(curves, budget);
  return out;
}

EquilibriumCertificate verify_equilibrium(const AuctionProfile& profile,
                                          const MixedStrategy& strategy1,
                                          const MixedStrategy& strategy2,
                                          const VerifierConfig& config) {
  validate_strategy(strategy1, profile);
  validate_strategy(strategy2, profile);
  auto [u1, u2] = equilibrium_value(profile, strategy1, strategy2);

  auto support_coords = [&](const MixedStrategy& s) {
    std::vector<std::vector<double>> coords(static_cast<size_t>(profile.n_items));
    for (int j = 0; j < profile.n_items; ++j) {
      for (const auto& a : s.atoms) coords[static_cast<size_t>(j)].push_back(a.point(j));
      for (const auto& seg : s.segments) {
        coords[static_cast<size_t>(j)].push_back(seg.a(j));
        coords[static_cast<size_t>(j)].push_back(seg.b(j));
      }
    }
    return coords;
  };

  double grid_bound = std::max(2.0 * config.grid_step, config.tolerance);
  auto certify = [&](int player, double value, const MixedStrategy& own,
                     const MixedStrategy& opp) {
    BestResponse br =
        best_response_search(profile, player, opp, config, support_coords(own));
    PlayerCertificate c;
    c.value = value;
    c.best_deviation = br.value;
    c.gain = br.value - value;
    c.witness = br.bid;
    c.critical_gain = br.critical_value - value;
    c.grid_gain = c.gain;
    c.pass = c.critical_gain <= config.tolerance && c.gain <= grid_bound;
    return c;
  };

  EquilibriumCertificate cert;
  cert.config = config;
  cert.player1 = certify(1, u1, strategy1, strategy2);
  cert.player2 = certify(2, u2, strategy2, strategy1);
  cert.pass = cert.player1.pass && cert.player2.pass;
  return cert;
}

}  // namespace allpay
