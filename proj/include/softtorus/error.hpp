#pragma once

#include <stdexcept>
#include <string>

namespace softtorus {

enum class ErrorCode {
  NonFinite,
  NotHermitian,
  NotUnitary,
  NotPSD,
  NotContraction,
  BranchCut,
  RankTooLarge,
  SyntaxError,
  IndexOverflow,
  UnassignedSymbol,
  DimensionMismatch,
  ZeroPolynomial,
  WindowTooSmall,
  QTooSmall,
  NotUnitModulus,
  NoWitnessFound,
  InvalidArgument,
  BadFormat,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace softtorus
