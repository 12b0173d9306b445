#pragma once

#include <array>
#include <string>
#include <utility>

#include "allpay/strategy.hpp"

namespace allpay {

enum class ThreeItemCaseTag {
  triangle,  // half the value sum exceeds the top value: closed triangle support
  chord,     // otherwise: one segment from (v1,0,0) to (0,v2,v3)
};

std::string to_string(ThreeItemCaseTag tag);

// Support geometry in the canonical order (values sorted descending).
// order[k] is the original index of canonical item k. In the chord case only
// A, B are meaningful and seg_probs = (1, 0, 0).
struct TriangleSpec {
  ThreeItemCaseTag case_tag;
  double z = 0.0;  // half of v1 + v2 + v3
  Eigen::Vector3d A, B, C;
  Eigen::Vector3d seg_probs;    // (P_AB, P_BC, P_CA)
  Eigen::Vector3d seg_lengths;  // (|AB|, |BC|, |CA|)
  std::array<int, 3> order{0, 1, 2};
};

// Requires symmetric valuations and both budgets at least max{z, v1};
// otherwise unsupported_regime.
TriangleSpec three_item_spec(const AuctionProfile& profile);

// Both players receive the same strategy: the triangle's three segments with
// probabilities seg_probs, or the single chord with probability 1. Every
// per-item marginal is uniform on [0, v_j].
std::pair<MixedStrategy, MixedStrategy> solve_three(const AuctionProfile& profile);

}  // namespace allpay
