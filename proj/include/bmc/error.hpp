#pragma once

#include <stdexcept>
#include <string>

namespace bmc {

enum class ErrorKind {
  DimensionMismatch,
  EmptyObservations,
  InvalidConfig,
  InvalidArgument,
  Parse,
  Numeric,
  Io,
};

// Single exception type for the whole library; `kind` makes failures
// machine-checkable, `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  const char* kind_name() const noexcept {
    switch (kind_) {
      case ErrorKind::DimensionMismatch: return "dimension-mismatch";
      case ErrorKind::EmptyObservations: return "empty-observations";
      case ErrorKind::InvalidConfig: return "invalid-config";
      case ErrorKind::InvalidArgument: return "invalid-argument";
      case ErrorKind::Parse: return "parse";
      case ErrorKind::Numeric: return "numeric";
      case ErrorKind::Io: return "io";
    }
    return "unknown";
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace bmc
