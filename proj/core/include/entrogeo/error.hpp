#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entrogeo {

enum class ErrorCode {
  EmptyInput,
  NegativeWeight,
  SumNotOne,
  NotStrictlyPositive,
  IndexOutOfRange,
  LengthMismatch,
  DomainEscape,
  ArityMismatch,
  InversionFailure,
  ParamOutOfRange,
  DomainError,
  ShapeMismatch,
  MonotonicityViolation,
  LawMismatch,
  ZetaRangeViolation,
  StepTooLarge,
  DegenerateSecondDerivative,
  AllZeroGradient,
  RankDeficient,
  Infeasible,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type. `value()` carries the
// offending quantity when one exists (e.g. the simplex-sum deviation).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double value = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

}  // namespace entrogeo
