#include "entrogeo/error.hpp"

namespace entrogeo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::NotStrictlyPositive: return "NotStrictlyPositive";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DomainEscape: return "DomainEscape";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InversionFailure: return "InversionFailure";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::LawMismatch: return "LawMismatch";
    case ErrorCode::ZetaRangeViolation: return "ZetaRangeViolation";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::DegenerateSecondDerivative: return "DegenerateSecondDerivative";
    case ErrorCode::AllZeroGradient: return "AllZeroGradient";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

}  // namespace entrogeo
