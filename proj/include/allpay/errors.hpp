#pragma once

#include <stdexcept>
#include <string>

namespace allpay {

enum class ErrorKind {
  invalid_profile,
  infeasible_bid,
  mass_not_normalized,
  support_infeasible,
  invalid_parameter,
  no_equilibrium,
  unsupported_regime,
  construction_invalid,
  precondition_violated,
};

std::string to_string(ErrorKind kind);

// All refusals carry a machine-readable kind; what() is "<Kind>: <detail>".
class AuctionError : public std::runtime_error {
 public:
  AuctionError(ErrorKind kind, const std::string& detail)
      : std::runtime_error(to_string(kind) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace allpay
