#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace foguel {

enum class ErrorCode {
  domain,
  dimension,
  not_hermitian,
  not_psd,
  singular,
  near_singular,
  not_contraction,
  not_isometry,
  non_convergence,
  length_mismatch,
  internal_consistency,
  property_failure,
  usage,
  io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code and,
// where meaningful, the offending scalar (asymmetry, eigenvalue, condition
// estimate, norm, gap).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double value = 0.0)
      : std::runtime_error(what), code_(code), value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

}  // namespace foguel
