#include "relaxflux/core/params.hpp"

#include <cmath>

#include "relaxflux/core/error.hpp"

namespace relaxflux {

RelaxParams RelaxParams::scalar(double epsilon, double a, double mu) {
  RelaxParams p;
  p.epsilon = epsilon;
  p.a = a;
  p.mu = mu;
  p.validate();
  return p;
}

RelaxParams RelaxParams::gas(double epsilon, double a, double mu, double gamma, double prandtl) {
  RelaxParams p;
  p.epsilon = epsilon;
  p.a = a;
  p.mu = mu;
  p.gamma = gamma;
  p.prandtl = prandtl;
  p.validate();
  return p;
}

double RelaxParams::g() const {
  if (!gamma) throw SolverError(ErrorKind::InvalidArgument, "gamma is not set");
  return *gamma;
}

double RelaxParams::kappa() const {
  if (!is_gas()) throw SolverError(ErrorKind::InvalidArgument, "gas constants are not set");
  return *gamma * mu / ((*gamma - 1.0) * *prandtl);
}

void RelaxParams::validate() const {
  auto bad = [](const std::string& m) { throw SolverError(ErrorKind::InvalidArgument, m); };
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) bad("epsilon must be positive");
  if (!(a >= 0.0) || !std::isfinite(a)) bad("freezing speed a must be non-negative");
  if (!(mu >= 0.0) || !std::isfinite(mu)) bad("viscosity mu must be non-negative");
  if (gamma && !(*gamma > 1.0)) bad("gamma must exceed 1");
  if (prandtl && !(*prandtl > 0.0)) bad("Prandtl number must be positive");
  if (gamma.has_value() != prandtl.has_value()) bad("gamma and Pr must be given together");
  if (!(mu / epsilon + a * a > 0.0)) bad("mu/epsilon + a^2 must be positive");
}

void TimeControl::validate() const {
  if (!(cfl > 0.0 && cfl < 1.0)) {
    throw SolverError(ErrorKind::InvalidArgument, "CFL number must lie in (0,1)");
  }
  if (!(t_end > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "t_end must be positive");
  if (max_steps <= 0) throw SolverError(ErrorKind::InvalidArgument, "max_steps must be positive");
}

}  // namespace relaxflux
