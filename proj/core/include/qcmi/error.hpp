#pragma once

#include <stdexcept>
#include <string>

namespace qcmi {

enum class ErrorKind {
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  EmptyKeepSet,
  NotDensityMatrix,
  DuplicateLabel,
  UnknownLabel,
  BadProbabilities,
  IndexOutOfRange,
  LayoutMismatch,
  LabelOverlap,
  BadPovm,
  BadChannel,
  RangeError,
  NonUnitary,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qcmi
