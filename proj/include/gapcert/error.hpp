#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapcert {

enum class ErrorCode {
  kInvalidPermutation,
  kClosureExceedsLimit,
  kUnsupportedParameter,
  kNotASubgroup,
  kWrongIndex,
  kNotUndirected,
  kNotInvariant,
  kNotTransitive,
  kNotSymmetric,
  kConditioningFailed,
  kDegenerateEigenpair,
  kTooLargeForExact,
  kHypothesisNotMet,
  kPreconditionViolated,
  kValidationRejected,
  kParseError,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// C layer can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gapcert
