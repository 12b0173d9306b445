#include "allpay/two_item.hpp"

#include <cmath>

namespace allpay {
namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

void require_two_items(const AuctionProfile& profile) {
  if (profile.n_items != 2)
    throw AuctionError(ErrorKind::precondition_violated, "profile must have exactly two items");
}

AuctionProfile swap_items(const AuctionProfile& profile) {
  AuctionProfile p = profile;
  p.values.col(0).swap(p.values.col(1));
  return p;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw AuctionError(ErrorKind::construction_invalid, what);
}

struct Builder {
  MixedStrategy s{0, {}, {}};

  void atom(double x, double y, double prob) {
    if (prob > 1e-13) s.atoms.push_back({vec2(x, y), prob});
  }
  void segment(double ax, double ay, double bx, double by, double prob) {
    if (prob > 1e-13 && (vec2(bx, by) - vec2(ax, ay)).norm() > 1e-13)
      s.segments.push_back({vec2(ax, ay), vec2(bx, by), prob});
  }
};

}  // namespace

std::string to_string(TwoItemCaseTag tag) {
  switch (tag) {
    case TwoItemCaseTag::strong_above_both: return "strong-above-both";
    case TwoItemCaseTag::strong_at_both: return "strong-at-both";
    case TwoItemCaseTag::strong_above_first: return "strong-above-first";
    case TwoItemCaseTag::strong_above_second: return "strong-above-second";
  }
  return "?";
}

std::pair<MixedStrategy, MixedStrategy> solve_two_symmetric(const AuctionProfile& profile) {
  require_two_items(profile);
  if (profile.budgets(0) != profile.budgets(1))
    throw AuctionError(ErrorKind::precondition_violated, "budgets must be equal");
  double v = profile.values(0, 0);
  if (profile.values(0, 1) != v || profile.values(1, 0) != v || profile.values(1, 1) != v)
    throw AuctionError(ErrorKind::precondition_violated, "all four values must be equal");

  double c = std::min(v, profile.budgets(0));
  MixedStrategy s1{1, {}, {}}, s2{2, {}, {}};
  if (c <= 1e-13) {
    s1.atoms.push_back({vec2(0, 0), 1.0});
    s2.atoms.push_back({vec2(0, 0), 1.0});
  } else {
    s1.segments.push_back({vec2(0, c), vec2(c, 0), 1.0});
    s2.segments.push_back({vec2(0, c), vec2(c, 0), 1.0});
  }
  validate_strategy(s1, profile);
  validate_strategy(s2, profile);
  return {s1, s2};
}

ThresholdSet compute_thresholds(const AuctionProfile& profile) {
  require_two_items(profile);
  RoleAssignment r = roles(profile);
  Vec caps = item_caps(profile);

  ThresholdSet t;
  t.players = r;
  t.swapped = caps(0) < caps(1);
  const AuctionProfile p = t.swapped ? swap_items(profile) : profile;
  t.L1 = t.swapped ? caps(1) : caps(0);
  t.L2 = t.swapped ? caps(0) : caps(1);
  t.T1 = t.T2 = t.T3 = t.T4 = std::numeric_limits<double>::quiet_NaN();

  double vs1 = p.value(r.strong, 0), vs2 = p.value(r.strong, 1);
  double vw1 = p.value(r.weak, 0), vw2 = p.value(r.weak, 1);
  double L1 = t.L1, L2 = t.L2;
  const double tol = kTol;

  double strong_budget = p.budget(r.strong);
  bool above1 = vs1 > L1, above2 = vs2 > L2;
  if (above1 && above2) {
    t.case_tag = TwoItemCaseTag::strong_above_both;
    t.T1 = vw1 - vw1 / vw2 * L2;
    t.T2 = vw2 - vw2 / vw1 * L1;
    t.T3 = L1 - (vs2 - L2) / vs2 * vs1;
    t.T4 = L2 - (vs1 - L1) / vs1 * vs2;
    check(t.T1 >= -tol && t.T1 <= L1 + tol, "T1 outside [0, L1]");
    check(t.T2 >= -tol && t.T2 <= L2 + tol, "T2 outside [0, L2]");
    check(t.T3 >= -tol && t.T3 <= L1 + tol, "T3 outside [0, L1]");
    check(t.T4 >= -tol && t.T4 <= L2 + tol, "T4 outside [0, L2]");
    check(L1 / vw1 + L2 / vw2 - 1.0 >= -tol, "strong diagonal mass L1/vw1 + L2/vw2 - 1 negative");
    check(L1 / vs1 + L2 / vs2 - 1.0 >= -tol, "weak diagonal mass L1/vs1 + L2/vs2 - 1 negative");
    check(t.T1 + L2 <= strong_budget + tol && L1 + t.T2 <= strong_budget + tol,
          "strong support corner exceeds the strong budget");
  } else if (!above1 && !above2) {
    t.case_tag = TwoItemCaseTag::strong_at_both;
    t.T1 = L1 - vw1 + L2 / vw2 * vw1;
    t.T2 = L2 - vw2 + L1 / vw1 * vw2;
    check(t.T1 >= -tol && t.T1 <= L1 + tol, "T1 outside [0, L1]");
    check(t.T2 >= -tol && t.T2 <= L2 + tol, "T2 outside [0, L2]");
    check(L1 / vw1 + L2 / vw2 - 1.0 >= -tol, "strong diagonal mass L1/vw1 + L2/vw2 - 1 negative");
  } else if (above1) {
    t.case_tag = TwoItemCaseTag::strong_above_first;
    t.T2 = -L1 / vw1 * vw2 + L2;
    t.T4 = L2 - (vs1 - L1) / vs1 * vs2;
    check(t.T2 >= -tol && t.T2 <= L2 + tol, "T2 outside [0, L2]");
    check(t.T4 >= -tol && t.T4 <= L2 + tol, "T4 outside [0, L2]");
    check(L1 + t.T2 <= strong_budget + tol,
          "strong support corner exceeds the strong budget");
  } else {
    t.case_tag = TwoItemCaseTag::strong_above_second;
    t.T1 = -L2 / vw2 * vw1 + L1;
    t.T3 = L1 - vs1 + L2 / vs2 * vs1;
    check(t.T1 >= -tol && t.T1 <= L1 + tol, "T1 outside [0, L1]");
    check(t.T3 >= -tol && t.T3 <= L1 + tol, "T3 outside [0, L1]");
    check(t.T1 + L2 <= strong_budget + tol,
          "strong support corner exceeds the strong budget");
  }
  return t;
}

std::pair<MixedStrategy, MixedStrategy> solve_two_asymmetric(const AuctionProfile& profile) {
  ThresholdSet t = compute_thresholds(profile);
  const AuctionProfile p = t.swapped ? swap_items(profile) : profile;
  RoleAssignment r = t.players;
  double vs1 = p.value(r.strong, 0), vs2 = p.value(r.strong, 1);
  double vw1 = p.value(r.weak, 0), vw2 = p.value(r.weak, 1);
  double L1 = t.L1, L2 = t.L2;

  Builder strong, weak;
  switch (t.case_tag) {
    case TwoItemCaseTag::strong_above_both:
      strong.segment(0, L2, t.T1, L2, t.T1 / vw1);
      strong.segment(L1, 0, L1, t.T2, t.T2 / vw2);
      strong.segment(t.T1, L2, L1, t.T2, L1 / vw1 + L2 / vw2 - 1.0);
      weak.segment(t.T3, 0, L1, 0, (L1 - t.T3) / vs1);
      weak.segment(0, t.T4, 0, L2, (L2 - t.T4) / vs2);
      weak.segment(0, t.T4, t.T3, 0, L1 / vs1 + L2 / vs2 - 1.0);
      break;

    case TwoItemCaseTag::strong_at_both:
      strong.segment(0, t.T2, t.T1, 0, L1 / vw1 + L2 / vw2 - 1.0);
      strong.segment(t.T1, 0, L1, 0, (L1 - t.T1) / vw1);
      strong.segment(0, t.T2, 0, L2, (L2 - t.T2) / vw2);
      weak.segment(0, L2, L1, 0, 1.0);
      break;

    case TwoItemCaseTag::strong_above_first:
      strong.atom(L1, 0, 1.0 - L2 / vw2);
      strong.segment(L1, 0, L1, t.T2, t.T2 / vw2);
      strong.segment(0, L2, L1, t.T2, L1 / vw1);
      weak.segment(0, t.T4, 0, L2, (L2 - t.T4) / vs2);
      weak.segment(0, t.T4, L1, 0, L1 / vs1);
      break;

    case TwoItemCaseTag::strong_above_second:
      strong.atom(0, L2, 1.0 - L1 / vw1);
      strong.segment(0, L2, t.T1, L2, t.T1 / vw1);
      strong.segment(t.T1, L2, L1, 0, L2 / vw2);
      weak.segment(t.T3, 0, L1, 0, (L1 - t.T3) / vs1);
      weak.segment(0, L2, t.T3, 0, L2 / vs2);
      break;
  }

  auto unswap = [&](MixedStrategy s) {
    if (t.swapped) {
      for (auto& a : s.atoms) std::swap(a.point(0), a.point(1));
      for (auto& seg : s.segments) {
        std::swap(seg.a(0), seg.a(1));
        std::swap(seg.b(0), seg.b(1));
      }
    }
    return s;
  };

  strong.s.owner = r.strong;
  weak.s.owner = r.weak;
  MixedStrategy for_strong = unswap(strong.s);
  MixedStrategy for_weak = unswap(weak.s);
  validate_strategy(for_strong, profile);
  validate_strategy(for_weak, profile);
  if (r.strong == 1) return {for_strong, for_weak};
  return {for_weak, for_strong};
}

std::pair<MixedStrategy, MixedStrategy> solve_two(const AuctionProfile& profile) {
  require_two_items(profile);
  if (profile.budgets(0) != profile.budgets(1)) return solve_two_asymmetric(profile);
  double v = profile.values(0, 0);
  if (profile.values(0, 1) == v && profile.values(1, 0) == v && profile.values(1, 1) == v)
    return solve_two_symmetric(profile);
  throw AuctionError(ErrorKind::unsupported_regime,
                     "equal budgets with heterogeneous values have no known construction");
}

}  // namespace allpay
