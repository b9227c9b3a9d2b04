#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qsroots {

enum class ErrorKind {
  SizeMismatch,
  NonPositiveScale,
  SingularPivot,
  Breakdown,
  BreakdownUnrecoverable,
  NonConvergence,
  HornerZero,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception. `index()` is the
// 1-based generator/pivot index (or active window size for solver failures)
// the failure refers to, 0 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::size_t index, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t index() const noexcept { return index_; }
  std::string_view name() const { return to_string(kind_); }

 private:
  ErrorKind kind_;
  std::size_t index_;
};

}  // namespace qsroots
