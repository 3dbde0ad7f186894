#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace caprise {

enum class ErrorKind {
  InvalidArgument,
  NonWettingAngle,
  SingularHeight,
  StepSizeUnderflow,
  ArcExceedsDomain,
  DegenerateNormal,
  CourantViolation,
  StencilInvalid,
  SolverDiverged,
  MultiValuedColumn,
  NoOverlap,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Argument errors map to CLI exit code 2, everything else to 3.
  bool is_argument_error() const noexcept {
    return kind_ == ErrorKind::InvalidArgument ||
           kind_ == ErrorKind::NonWettingAngle ||
           kind_ == ErrorKind::ArcExceedsDomain || kind_ == ErrorKind::Io;
  }

 private:
  ErrorKind kind_;
};

}  // namespace caprise
