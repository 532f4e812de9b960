#pragma once

#include <stdexcept>
#include <string>

namespace qvirial {

/// Failure categories raised by the library. Each maps to one named error
/// condition of the public operations.
enum class ErrorKind {
  InvalidParameter,
  PoleOnRealAxis,
  CriticalDampingSingularity,
  PoleCollision,
  NonRealResult,
  ToleranceNotMet,
  UnstableStep,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::PoleOnRealAxis: return "PoleOnRealAxis";
    case ErrorKind::CriticalDampingSingularity: return "CriticalDampingSingularity";
    case ErrorKind::PoleCollision: return "PoleCollision";
    case ErrorKind::NonRealResult: return "NonRealResult";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::UnstableStep: return "UnstableStep";
  }
  return "Unknown";
}

}  // namespace qvirial
