#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvf {

enum class ErrorCode {
  NotIntegral,
  PlaceMismatch,
  NotDisjoint,
  EmptyInput,
  NotNormalized,
  Unsatisfiable,
  InvalidChain,
  Singular,
  NotBlockDiagonal,
  IndexOutOfRange,
  DimensionMismatch,
  EmptyConstraint,
  DuplicatePlace,
  VerificationFailed,
  NotPrime,
  ConstantPolynomial,
  NotSeparable,
  NotIrreducibleModulus,
  CharacteristicMismatch,
  UnknownDegree,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::PlaceMismatch: return "PlaceMismatch";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::InvalidChain: return "InvalidChain";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotBlockDiagonal: return "NotBlockDiagonal";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyConstraint: return "EmptyConstraint";
    case ErrorCode::DuplicatePlace: return "DuplicatePlace";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::NotIrreducibleModulus: return "NotIrreducibleModulus";
    case ErrorCode::CharacteristicMismatch: return "CharacteristicMismatch";
    case ErrorCode::UnknownDegree: return "UnknownDegree";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every library failure carries one of the codes above; the CLI maps
/// ParseError to exit status 2 and everything else to 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace mvf
