#pragma once

#include <optional>

namespace relaxflux {

// Relaxation time, freezing speed, viscosity and (for gases) the
// thermodynamic constants. Heat conductivity follows from mu, gamma and Pr.
struct RelaxParams {
  double epsilon = 1.0;
  double a = 0.0;
  double mu = 0.0;
  std::optional<double> gamma;
  std::optional<double> prandtl;

  static RelaxParams scalar(double epsilon, double a, double mu);
  static RelaxParams gas(double epsilon, double a, double mu, double gamma, double prandtl);

  bool is_gas() const noexcept { return gamma.has_value() && prandtl.has_value(); }
  double g() const;      // gamma; throws when unset
  double kappa() const;  // gamma*mu / ((gamma-1) Pr)

  // Throws InvalidArgument on epsilon <= 0, negative a or mu, gamma <= 1,
  // Pr <= 0, or mu/epsilon + a^2 == 0.
  void validate() const;
};

struct TimeControl {
  double cfl = 0.5;
  double t_end = 1.0;
  long max_steps = 100'000'000;

  void validate() const;
};

}  // namespace relaxflux
