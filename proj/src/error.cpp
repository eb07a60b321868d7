#include "softtorus/error.hpp"

namespace softtorus {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::IndexOverflow: return "IndexOverflow";
    case ErrorCode::UnassignedSymbol: return "UnassignedSymbol";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::QTooSmall: return "QTooSmall";
    case ErrorCode::NotUnitModulus: return "NotUnitModulus";
    case ErrorCode::NoWitnessFound: return "NoWitnessFound";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadFormat: return "BadFormat";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace softtorus
