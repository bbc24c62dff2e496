#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bhk {

enum class ErrorKind {
  SyntaxError,
  DuplicateMonomial,
  CoefficientUnsupported,
  NotSquare,
  SingularExponentMatrix,
  NotInvertibleNondegenerate,
  NonpositiveWeight,
  SingularMatrix,
  NotASublattice,
  InfiniteQuotient,
  NotInLattice,
  NotInAmbient,
  ElementNotInGroup,
  NonPrimitiveRay,
  DegenerateSimplex,
  NegativeExponent,
  NotCalabiYauType,
  VerificationFailed,
  SetupMismatch,
  ProbeFailure,
  EnumerationCap,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

  /// True for errors caused by the caller's input rather than a failed check.
  bool is_input_error() const noexcept {
    return kind_ != ErrorKind::VerificationFailed && kind_ != ErrorKind::ProbeFailure;
  }

private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace bhk
