#include "tauberlab/error.hpp"

namespace tauberlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SignConditionViolated: return "SignConditionViolated";
    case ErrorCode::DegenerateExponent: return "DegenerateExponent";
    case ErrorCode::ZeroRate: return "ZeroRate";
    case ErrorCode::OffsetNotAllowed: return "OffsetNotAllowed";
    case ErrorCode::NumericOverflow: return "NumericOverflow";
    case ErrorCode::InconsistentInputs: return "InconsistentInputs";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoInteriorPeak: return "NoInteriorPeak";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::EmptyMeasure: return "EmptyMeasure";
    case ErrorCode::InvalidMeasure: return "InvalidMeasure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::InsufficientSpan: return "InsufficientSpan";
    case ErrorCode::SignChange: return "SignChange";
    case ErrorCode::DegenerateWindow: return "DegenerateWindow";
    case ErrorCode::SpecOutOfRange: return "SpecOutOfRange";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string_view module, const std::string& what)
    : std::runtime_error(std::string(module) + ": " + what), code_(code) {}

}  // namespace tauberlab
