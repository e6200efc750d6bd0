#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbg {

enum class ErrorKind {
  NotHermitian,
  TraceNotOne,
  NotPositive,
  LengthMismatch,
  DimensionMismatch,
  OutOfRange,
  SpecViolation,
  IndexOutOfRange,
  ConvergenceFailure,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. `measured()` carries the size of the violation
/// when one applies (eigenvalue, trace deviation, residual), NaN otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double measured);
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  double measured() const noexcept { return measured_; }

  /// True for the three density-matrix validation failures.
  bool is_invalid_state() const noexcept;

 private:
  ErrorKind kind_;
  double measured_;
};

}  // namespace qbg
