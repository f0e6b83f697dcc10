#include "ordiff/error.hpp"

namespace ordiff {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidVector: return "InvalidVector";
    case ErrorKind::InvalidSpace: return "InvalidSpace";
    case ErrorKind::WrongSpace: return "WrongSpace";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::InvalidCone: return "InvalidCone";
    case ErrorKind::InvalidOperator: return "InvalidOperator";
    case ErrorKind::DegenerateOperator: return "DegenerateOperator";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorKind::InvalidScale: return "InvalidScale";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace ordiff
