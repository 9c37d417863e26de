#pragma once

#include <stdexcept>
#include <string>

namespace latgauss {

enum class ErrorCode {
  kSingularBasis,
  kDimensionMismatch,
  kEnumerationBudgetExceeded,
  kNonPositiveTau,
  kInvalidSigmaBar,
  kDeltaOutOfRange,
  kPreconditionViolated,
  kSpaceTooLarge,
  kTailNotNegligible,
  kStateOutsideBox,
  kNotReversible,
  kSpaceTooLargeForExhaustive,
  kEmptySmallSet,
  kNotNormalized,
  kParseError,
  kInvalidArgument,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace latgauss
