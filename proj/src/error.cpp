#include "qbg/error.hpp"

#include <limits>

namespace qbg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SpecViolation: return "SpecViolation";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, double measured)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind),
      measured_(measured) {}

Error::Error(ErrorKind kind, const std::string& what)
    : Error(kind, what, std::numeric_limits<double>::quiet_NaN()) {}

bool Error::is_invalid_state() const noexcept {
  return kind_ == ErrorKind::NotHermitian || kind_ == ErrorKind::TraceNotOne ||
         kind_ == ErrorKind::NotPositive;
}

}  // namespace qbg
