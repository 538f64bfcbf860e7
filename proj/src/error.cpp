#include "pillow/error.hpp"

namespace pillow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotDiagonalInFrame: return "NotDiagonalInFrame";
    case ErrorKind::DegenerateOverlap: return "DegenerateOverlap";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::CrossesCutLine: return "CrossesCutLine";
    case ErrorKind::NotEmbedded: return "NotEmbedded";
    case ErrorKind::HitsForbiddenCorner: return "HitsForbiddenCorner";
    case ErrorKind::BadEndpoints: return "BadEndpoints";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::BadHomology: return "BadHomology";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NoIntersections: return "NoIntersections";
    case ErrorKind::LiftFailed: return "LiftFailed";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::UnknownFact: return "UnknownFact";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace pillow
