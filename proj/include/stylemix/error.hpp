#ifndef STYLEMIX_ERROR_HPP
#define STYLEMIX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace stylemix {

enum class ErrorCode {
  MalformedInput,
  DimensionMismatch,
  DuplicateId,
  NonFiniteValue,
  InvalidDistanceMatrix,
  InvalidInstance,
  EmptySubset,
  IndexOutOfRange,
  DuplicateIndex,
  PatternViolatesMinStyles,
  InfeasiblePlan,
  Infeasible,
  BudgetExceeded,
  PopulationTooSmall,
  InvalidConfig,
  VerificationFailed,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::MalformedInput: return "MalformedInput";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::DuplicateId: return "DuplicateId";
  case ErrorCode::NonFiniteValue: return "NonFiniteValue";
  case ErrorCode::InvalidDistanceMatrix: return "InvalidDistanceMatrix";
  case ErrorCode::InvalidInstance: return "InvalidInstance";
  case ErrorCode::EmptySubset: return "EmptySubset";
  case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorCode::DuplicateIndex: return "DuplicateIndex";
  case ErrorCode::PatternViolatesMinStyles: return "PatternViolatesMinStyles";
  case ErrorCode::InfeasiblePlan: return "InfeasiblePlan";
  case ErrorCode::Infeasible: return "Infeasible";
  case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  case ErrorCode::PopulationTooSmall: return "PopulationTooSmall";
  case ErrorCode::InvalidConfig: return "InvalidConfig";
  case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code; the
/// message names the offending row, field or index.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace stylemix

#endif // STYLEMIX_ERROR_HPP
