#include "allpay/three_item.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace allpay {

std::string to_string(ThreeItemCaseTag tag) {
  return tag == ThreeItemCaseTag::triangle ? "triangle" : "chord";
}

TriangleSpec three_item_spec(const AuctionProfile& profile) {
  if (profile.n_items != 3)
    throw AuctionError(ErrorKind::precondition_violated, "profile must have exactly three items");
  for (int j = 0; j < 3; ++j)
    if (profile.values(0, j) != profile.values(1, j))
      throw AuctionError(ErrorKind::unsupported_regime,
                         "construction requires both players to value each item equally");

  TriangleSpec spec;
  std::iota(spec.order.begin(), spec.order.end(), 0);
  std::stable_sort(spec.order.begin(), spec.order.end(),
                   [&](int a, int b) { return profile.values(0, a) > profile.values(0, b); });
  double v1 = profile.values(0, spec.order[0]);
  double v2 = profile.values(0, spec.order[1]);
  double v3 = profile.values(0, spec.order[2]);
  spec.z = 0.5 * (v1 + v2 + v3);

  double bound = std::max(spec.z, v1);
  for (int i = 1; i <= 2; ++i)
    if (profile.budget(i) < bound - kTol)
      throw AuctionError(ErrorKind::unsupported_regime,
                         "budget of player " + std::to_string(i) + " is below max{half value sum, top value} = " +
                             std::to_string(bound));

  if (spec.z > v1) {
    spec.case_tag = ThreeItemCaseTag::triangle;
    double z = spec.z;
    spec.A << v1, 0.0, z - v1;
    spec.B << z - v2, v2, 0.0;
    spec.C << 0.0, z - v3, v3;
    // z > v1 >= v2 >= v3 makes every denominator positive.
    assert(z - v3 > 0 && z - v2 > 0 && z - v1 > 0);
    double r_ab = (z - v3) / (z - v2);
    double r_ca = (z - v3) / (z - v1);
    double denom = r_ab + 1.0 + r_ca;
    spec.seg_probs << r_ab / denom, 1.0 / denom, r_ca / denom;
    spec.seg_lengths << (spec.B - spec.A).norm(), (spec.C - spec.B).norm(),
        (spec.A - spec.C).norm();
  } else {
    spec.case_tag = ThreeItemCaseTag::chord;
    spec.A << v1, 0.0, 0.0;
    spec.B << 0.0, v2, v3;
    spec.C.setZero();
    spec.seg_probs << 1.0, 0.0, 0.0;
    spec.seg_lengths << (spec.B - spec.A).norm(), 0.0, 0.0;
  }
  return spec;
}

std::pair<MixedStrategy, MixedStrategy> solve_three(const AuctionProfile& profile) {
  TriangleSpec spec = three_item_spec(profile);

  // Map a canonical-order vertex back to the profile's item order.
  auto unsort = [&](const Eigen::Vector3d& p) {
    Vec out(3);
    for (int k = 0; k < 3; ++k) out(spec.order[static_cast<size_t>(k)]) = p(k);
    return out;
  };

  MixedStrategy s{1, {}, {}};
  if (spec.case_tag == ThreeItemCaseTag::triangle) {
    s.segments.push_back({unsort(spec.A), unsort(spec.B), spec.seg_probs(0)});
    s.segments.push_back({unsort(spec.B), unsort(spec.C), spec.seg_probs(1)});
    s.segments.push_back({unsort(spec.C), unsort(spec.A), spec.seg_probs(2)});
  } else {
    s.segments.push_back({unsort(spec.A), unsort(spec.B), 1.0});
  }
  MixedStrategy s2 = s;
  s2.owner = 2;
  validate_strategy(s, profile);
  validate_strategy(s2, profile);
  return {s, s2};
}

}  // namespace allpay
