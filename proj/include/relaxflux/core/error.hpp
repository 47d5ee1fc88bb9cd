#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace relaxflux {

enum class ErrorKind {
  InvalidArgument,
  NonRealSpectrum,
  DefectiveMatrix,
  NonPositiveBlock,
  ZeroWaveSpeed,
  StateOutOfRange,
  NonFiniteState,
  NonPhysicalState,
  CFLViolation,
  VacuumFormation,
  ShootingNoConvergence,
  BlowUp,
  GridMismatch,
  MissingResource,
  SchemaError,
  ConfigError,
  NoVortexFound,
};

const char* to_string(ErrorKind kind);

// Location of a failure inside a run. Cell indices are interior indices
// (0-based); `step` counts completed steps before the failing one.
struct ErrorContext {
  std::optional<long> step;
  std::optional<int> i;
  std::optional<int> j;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what, ErrorContext ctx = {});

  ErrorKind kind() const noexcept { return kind_; }
  const ErrorContext& context() const noexcept { return ctx_; }

  // Returns a copy carrying the given step number (cell indices kept).
  SolverError with_step(long step) const;
  // Returns a copy located at the given context.
  SolverError at(ErrorContext ctx) const { return SolverError(kind_, message_, ctx); }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  ErrorContext ctx_;
  std::string message_;
};

}  // namespace relaxflux
