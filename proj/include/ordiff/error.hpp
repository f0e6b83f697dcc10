#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordiff {

enum class ErrorKind {
  InvalidVector,
  InvalidSpace,
  WrongSpace,
  SpaceMismatch,
  InvalidCone,
  InvalidOperator,
  DegenerateOperator,
  ZeroDirection,
  NumericalBreakdown,
  InvalidScale,
  InvalidConfig,
  ParseError,
  UsageError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library surfaces as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ordiff
