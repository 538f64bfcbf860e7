#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pillow {

enum class ErrorKind {
  NotDiagonalInFrame,
  DegenerateOverlap,
  NotClosed,
  CrossesCutLine,
  NotEmbedded,
  HitsForbiddenCorner,
  BadEndpoints,
  NotCoprime,
  BadHomology,
  NoConvergence,
  EmptyInput,
  NoIntersections,
  LiftFailed,
  BudgetExceeded,
  Malformed,
  WindowTooSmall,
  UnknownFact,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure in the library is reported through this type; the CLI
// maps it onto exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pillow
