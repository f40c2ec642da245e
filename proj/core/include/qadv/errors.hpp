#pragma once

#include <stdexcept>
#include <string>

namespace qadv {

enum class ErrorCode {
  NonHermitian,
  NonConvergent,
  NotPositiveDefinite,
  ShapeMismatch,
  ParseError,
  InvariantViolation,
  BadParameters,
  IndexOutOfRange,
  TooLarge,
  DimensionMismatch,
  NonUnitary,
  ImaginaryResidue,
  IncompleteProjectors,
  LambdaOutOfRange,
  VacuousBound,
  TrivialRatio,
  AllBlocksTrivial,
  ZeroDenominator,
  BlockSingular,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonUnitary: return "NonUnitary";
    case ErrorCode::ImaginaryResidue: return "ImaginaryResidue";
    case ErrorCode::IncompleteProjectors: return "IncompleteProjectors";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::VacuousBound: return "VacuousBound";
    case ErrorCode::TrivialRatio: return "TrivialRatio";
    case ErrorCode::AllBlocksTrivial: return "AllBlocksTrivial";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::BlockSingular: return "BlockSingular";
  }
  return "Unknown";
}

}  // namespace qadv
