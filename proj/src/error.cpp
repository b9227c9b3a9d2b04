#include "qsroots/error.hpp"

namespace qsroots {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NonPositiveScale: return "NonPositiveScale";
    case ErrorKind::SingularPivot: return "SingularPivot";
    case ErrorKind::Breakdown: return "Breakdown";
    case ErrorKind::BreakdownUnrecoverable: return "BreakdownUnrecoverable";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::HornerZero: return "HornerZero";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::size_t index, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind),
      index_(index) {}

}  // namespace qsroots
