#include "prony/error.hpp"

namespace prony {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kNotHyperbolic: return "NotHyperbolic";
    case ErrorKind::kRepeatedNodes: return "RepeatedNodes";
    case ErrorKind::kDegenerateHankel: return "DegenerateHankel";
    case ErrorKind::kDegenerateSequence: return "DegenerateSequence";
    case ErrorKind::kEmptyDomain: return "EmptyDomain";
    case ErrorKind::kInterpolationInconsistency: return "InterpolationInconsistency";
    case ErrorKind::kResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::kNoRealSolution: return "NoRealSolution";
    case ErrorKind::kNoUnboundedComponent: return "NoUnboundedComponent";
    case ErrorKind::kTooFewValidTrials: return "TooFewValidTrials";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return 2;
    case ErrorKind::kInterpolationInconsistency:
    case ErrorKind::kDegenerateSequence:
      return 4;
    default:
      return 3;
  }
}

}  // namespace prony
