#pragma once

#include <optional>
#include <string>
#include <utility>

#include "allpay/strategy.hpp"

namespace allpay {

struct SolveResult {
  std::string case_label;
  MixedStrategy strategy1;
  MixedStrategy strategy2;
};

// Dispatches a validated profile to the matching solver and labels the case.
// Throws no_equilibrium / unsupported_regime / construction_invalid when the
// profile has no known construction.
SolveResult solve_profile(const AuctionProfile& profile,
                          std::optional<double> boundary_mass = {});

// Command-line front end. Exit codes: 0 success (and verification pass),
// 1 verification fail, 2 invalid input, 3 no equilibrium / unsupported
// regime / invalid construction (machine-readable reason on stderr).
int run_cli(int argc, const char* const* argv);

}  // namespace allpay
