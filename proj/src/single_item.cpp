#include "allpay/single_item.hpp"

#include <algorithm>
#include <cmath>

namespace allpay {
namespace {

Vec vec1(double x) {
  Vec v(1);
  v << x;
  return v;
}

void require_single_item(const AuctionProfile& profile) {
  if (profile.n_items != 1)
    throw AuctionError(ErrorKind::precondition_violated, "profile must have exactly one item");
}

// Atom/segment assembly that silently drops empty components, so the
// degenerate cap L = 0 collapses to a pure atom at 0.
void add_atom(MixedStrategy& s, double x, double prob) {
  if (prob > 1e-13) s.atoms.push_back({vec1(x), prob});
}

void add_segment(MixedStrategy& s, double lo, double hi, double prob) {
  if (prob > 1e-13 && hi - lo > 1e-13)
    s.segments.push_back({vec1(lo), vec1(hi), prob});
}

}  // namespace

std::string to_string(SingleItemTag tag) {
  switch (tag) {
    case SingleItemTag::pure_equilibrium: return "pure";
    case SingleItemTag::boundary_family: return "boundary-family";
    case SingleItemTag::asymmetric_strong_high_value: return "strong-high-value";
    case SingleItemTag::asymmetric_strong_low_value: return "strong-low-value";
    case SingleItemTag::non_existence_regime: return "non-existence";
  }
  return "?";
}

SingleItemCase classify_single(const AuctionProfile& profile) {
  require_single_item(profile);
  double b1 = profile.budget(1), b2 = profile.budget(2);
  double cap = item_cap(profile, 0);
  if (b1 == b2) {
    double half_min_value = 0.5 * std::min(profile.value(1, 0), profile.value(2, 0));
    if (b2 < half_min_value) return {SingleItemTag::pure_equilibrium, {}, cap};
    if (b2 == half_min_value) return {SingleItemTag::boundary_family, {}, cap};
    return {SingleItemTag::non_existence_regime, {}, cap};
  }
  RoleAssignment r = roles(profile);
  double v_strong = profile.value(r.strong, 0);
  if (v_strong > cap) return {SingleItemTag::asymmetric_strong_high_value, r, cap};
  return {SingleItemTag::asymmetric_strong_low_value, r, cap};
}

std::pair<MixedStrategy, MixedStrategy> solve_single(
    const AuctionProfile& profile, std::optional<double> boundary_mass) {
  SingleItemCase c = classify_single(profile);
  double cap = c.cap;
  MixedStrategy s1{1, {}, {}}, s2{2, {}, {}};

  switch (c.tag) {
    case SingleItemTag::non_existence_regime:
      throw AuctionError(ErrorKind::no_equilibrium,
                         "equal budgets exceed half the smaller value; no support "
                         "structure admits an equilibrium");

    case SingleItemTag::pure_equilibrium:
      s1.atoms.push_back({vec1(profile.budget(1)), 1.0});
      s2.atoms.push_back({vec1(profile.budget(2)), 1.0});
      break;

    case SingleItemTag::boundary_family: {
      int low = profile.value(1, 0) <= profile.value(2, 0) ? 1 : 2;
      double v_other = profile.value(low == 1 ? 2 : 1, 0);
      double bound = 1.0 - 2.0 * cap / v_other;
      double mass = boundary_mass.value_or(bound);
      if (mass < -kTol || mass > bound + kTol)
        throw AuctionError(ErrorKind::invalid_parameter,
                           "boundary mass " + std::to_string(mass) + " outside [0, " +
                               std::to_string(bound) + "]");
      mass = std::clamp(mass, 0.0, std::max(bound, 0.0));
      MixedStrategy& mixer = low == 1 ? s1 : s2;
      MixedStrategy& other = low == 1 ? s2 : s1;
      add_atom(mixer, 0.0, mass);
      add_atom(mixer, cap, 1.0 - mass);
      other.atoms.push_back({vec1(cap), 1.0});
      break;
    }

    case SingleItemTag::asymmetric_strong_high_value: {
      double v_s = profile.value(c.players->strong, 0);
      double v_w = profile.value(c.players->weak, 0);
      MixedStrategy& strong = c.players->strong == 1 ? s1 : s2;
      MixedStrategy& weak = c.players->strong == 1 ? s2 : s1;
      add_segment(strong, 0.0, cap, cap / v_w);
      add_atom(strong, cap, 1.0 - cap / v_w);
      add_atom(weak, 0.0, (v_s - cap) / v_s);
      add_segment(weak, 0.0, cap, cap / v_s);
      break;
    }

    case SingleItemTag::asymmetric_strong_low_value: {
      double v_s = profile.value(c.players->strong, 0);  // v_s = cap here
      double v_w = profile.value(c.players->weak, 0);
      MixedStrategy& strong = c.players->strong == 1 ? s1 : s2;
      MixedStrategy& weak = c.players->strong == 1 ? s2 : s1;
      add_atom(strong, 0.0, (v_w - cap) / v_w);
      add_segment(strong, 0.0, cap, cap / v_w);
      add_segment(weak, 0.0, cap, cap / v_s);
      break;
    }
  }

  validate_strategy(s1, profile);
  validate_strategy(s2, profile);
  return {s1, s2};
}

std::pair<double, double> single_equilibrium_value(const AuctionProfile& profile) {
  SingleItemCase c = classify_single(profile);
  switch (c.tag) {
    case SingleItemTag::non_existence_regime:
      throw AuctionError(ErrorKind::no_equilibrium,
                         "equal budgets exceed half the smaller value");
    case SingleItemTag::pure_equilibrium:
      return {0.5 * profile.value(1, 0) - profile.budget(1),
              0.5 * profile.value(2, 0) - profile.budget(2)};
    case SingleItemTag::boundary_family: {
      int low = profile.value(1, 0) <= profile.value(2, 0) ? 1 : 2;
      double v_other = profile.value(low == 1 ? 2 : 1, 0);
      double u_other = v_other - 2.0 * c.cap;
      return low == 1 ? std::pair{0.0, u_other} : std::pair{u_other, 0.0};
    }
    case SingleItemTag::asymmetric_strong_high_value: {
      double u_s = profile.value(c.players->strong, 0) - c.cap;
      return c.players->strong == 1 ? std::pair{u_s, 0.0} : std::pair{0.0, u_s};
    }
    case SingleItemTag::asymmetric_strong_low_value: {
      double u_w = profile.value(c.players->weak, 0) - c.cap;
      return c.players->weak == 1 ? std::pair{u_w, 0.0} : std::pair{0.0, u_w};
    }
  }
  return {0.0, 0.0};
}

}  // namespace allpay
