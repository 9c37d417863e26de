#include <algorithm>
#include <cmath>
#include <limits>

#include "latgauss/error.hpp"
#include "latgauss/types.hpp"

namespace latgauss {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingularBasis: return "SingularBasis";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::kNonPositiveTau: return "NonPositiveTau";
    case ErrorCode::kInvalidSigmaBar: return "InvalidSigmaBar";
    case ErrorCode::kDeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kSpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::kTailNotNegligible: return "TailNotNegligible";
    case ErrorCode::kStateOutsideBox: return "StateOutsideBox";
    case ErrorCode::kNotReversible: return "NotReversible";
    case ErrorCode::kSpaceTooLargeForExhaustive: return "SpaceTooLargeForExhaustive";
    case ErrorCode::kEmptySmallSet: return "EmptySmallSet";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double round_half_even(double v) {
  const double lo = std::floor(v);
  const double frac = v - lo;
  if (frac > 0.5) return lo + 1.0;
  if (frac < 0.5) return lo;
  return std::fmod(lo, 2.0) == 0.0 ? lo : lo + 1.0;
}

double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  CompensatedSum acc;
  for (double e : v) acc.add(std::exp(e - m));
  return m + std::log(acc.value());
}

}  // namespace latgauss
