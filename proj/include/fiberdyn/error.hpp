#pragma once

#include <stdexcept>
#include <string>

namespace fiberdyn {

enum class ErrorKind {
  InvalidArgument,
  SingularSection,
  ExclusionZone,
  InvalidField,
  UnsupportedRegime,
  InconsistentSystem,
  Domain,
  ChartBoundary,
  InvalidFunction,
  Grade,
  Mismatch,
  SingularSurface,
  Config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::SingularSection: return "singular-section";
    case ErrorKind::ExclusionZone: return "exclusion-zone";
    case ErrorKind::InvalidField: return "invalid-field";
    case ErrorKind::UnsupportedRegime: return "unsupported-regime";
    case ErrorKind::InconsistentSystem: return "inconsistent-system";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::ChartBoundary: return "chart-boundary";
    case ErrorKind::InvalidFunction: return "invalid-function";
    case ErrorKind::Grade: return "grade";
    case ErrorKind::Mismatch: return "mismatch";
    case ErrorKind::SingularSurface: return "singular-surface";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace fiberdyn
