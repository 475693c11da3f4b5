#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unfold {

enum class ErrorKind {
  AxisOutOfRange,
  DimensionMismatch,
  SingularMetric,
  InsufficientProbes,
  DegenerateConstraint,
  EmptyShell,
  OffShell,
  AxisMismatch,
  ZeroProfile,
  GridTooSmall,
  CflViolation,
  NonConvergence,
  ChartMismatch,
  InvalidArgument,
  NonCommutingRemainder,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace unfold
