#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tauberlab {

enum class ErrorCode {
  SignConditionViolated,
  DegenerateExponent,
  ZeroRate,
  OffsetNotAllowed,
  NumericOverflow,
  InconsistentInputs,
  DomainError,
  NoInteriorPeak,
  NotIntegrable,
  ToleranceNotMet,
  EmptyMeasure,
  InvalidMeasure,
  ParseError,
  BadRange,
  InsufficientSpan,
  SignChange,
  DegenerateWindow,
  SpecOutOfRange,
  ConfigParse,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library. The message is prefixed with the
/// originating module ("params: ...", "transform: ...").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string_view module, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tauberlab
