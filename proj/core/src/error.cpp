#include "qcmi/error.hpp"

namespace qcmi {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::EmptyKeepSet: return "EmptyKeepSet";
    case ErrorKind::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::BadProbabilities: return "BadProbabilities";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LayoutMismatch: return "LayoutMismatch";
    case ErrorKind::LabelOverlap: return "LabelOverlap";
    case ErrorKind::BadPovm: return "BadPovm";
    case ErrorKind::BadChannel: return "BadChannel";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace qcmi
