#include "gapcert/error.hpp"

namespace gapcert {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kClosureExceedsLimit: return "ClosureExceedsLimit";
    case ErrorCode::kUnsupportedParameter: return "UnsupportedParameter";
    case ErrorCode::kNotASubgroup: return "NotASubgroup";
    case ErrorCode::kWrongIndex: return "WrongIndex";
    case ErrorCode::kNotUndirected: return "NotUndirected";
    case ErrorCode::kNotInvariant: return "NotInvariant";
    case ErrorCode::kNotTransitive: return "NotTransitive";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kConditioningFailed: return "ConditioningFailed";
    case ErrorCode::kDegenerateEigenpair: return "DegenerateEigenpair";
    case ErrorCode::kTooLargeForExact: return "TooLargeForExact";
    case ErrorCode::kHypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kValidationRejected: return "ValidationRejected";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace gapcert
