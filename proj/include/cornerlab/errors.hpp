#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cornerlab {

enum class ErrorKind {
  InvalidArgument,
  InvalidPolygon,
  EmptyDirectionCone,
  EpsilonTooLarge,
  DegenerateJet,
  SingularSystem,
  PreconditionViolated,
  NonIntegrable,
  ZeroField,
  ZeroSample,
  EllipticityViolated,
  SupportViolated,
  SymbolTooSmall,
  NoContraction,
  NoConvergence,
  ResolutionTooCoarse,
  TestFieldInvalid,
  NoRootInInterval,
  ConfigError,
};

std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace cornerlab
