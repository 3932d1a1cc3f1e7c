#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prony {

enum class ErrorKind {
  kInvalidInput,
  kNotHyperbolic,
  kRepeatedNodes,
  kDegenerateHankel,
  kDegenerateSequence,
  kEmptyDomain,
  kInterpolationInconsistency,
  kResidualTooLarge,
  kNoRealSolution,
  kNoUnboundedComponent,
  kTooFewValidTrials,
};

std::string_view to_string(ErrorKind kind);

// Process exit code used by the command-line front end for each error kind:
// 2 input validation, 3 mathematical degeneracy, 4 internal inconsistency.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace prony
