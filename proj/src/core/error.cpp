#include "relaxflux/core/error.hpp"

namespace relaxflux {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonRealSpectrum: return "NonRealSpectrum";
    case ErrorKind::DefectiveMatrix: return "DefectiveMatrix";
    case ErrorKind::NonPositiveBlock: return "NonPositiveBlock";
    case ErrorKind::ZeroWaveSpeed: return "ZeroWaveSpeed";
    case ErrorKind::StateOutOfRange: return "StateOutOfRange";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::NonPhysicalState: return "NonPhysicalState";
    case ErrorKind::CFLViolation: return "CFLViolation";
    case ErrorKind::VacuumFormation: return "VacuumFormation";
    case ErrorKind::ShootingNoConvergence: return "ShootingNoConvergence";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::MissingResource: return "MissingResource";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::NoVortexFound: return "NoVortexFound";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& what, const ErrorContext& ctx) {
  std::string s = std::string(to_string(kind)) + ": " + what;
  if (ctx.i || ctx.j || ctx.step) {
    s += " [";
    bool first = true;
    auto add = [&](const char* key, long v) {
      if (!first) s += ", ";
      s += key;
      s += "=";
      s += std::to_string(v);
      first = false;
    };
    if (ctx.step) add("step", *ctx.step);
    if (ctx.i) add("i", *ctx.i);
    if (ctx.j) add("j", *ctx.j);
    s += "]";
  }
  return s;
}

}  // namespace

SolverError::SolverError(ErrorKind kind, const std::string& what, ErrorContext ctx)
    : std::runtime_error(decorate(kind, what, ctx)), kind_(kind), ctx_(ctx), message_(what) {}

SolverError SolverError::with_step(long step) const {
  ErrorContext c = ctx_;
  c.step = step;
  return SolverError(kind_, message_, c);
}

}  // namespace relaxflux
