#include "relaxflux/core/timestep.hpp"

#include <algorithm>
#include <cmath>

#include "relaxflux/core/error.hpp"

namespace relaxflux {

double compute_dt(double lambda_max_x, double dx, std::optional<double> lambda_max_y,
                  std::optional<double> dy, const TimeControl& tc, double t_now) {
  if (!(lambda_max_x > 0.0) || (lambda_max_y && !(*lambda_max_y > 0.0))) {
    throw SolverError(ErrorKind::ZeroWaveSpeed, "maximum wave speed is zero");
  }
  if (lambda_max_y.has_value() != dy.has_value()) {
    throw SolverError(ErrorKind::InvalidArgument, "lambda_max_y and dy must be given together");
  }
  double h = dx / lambda_max_x;
  if (lambda_max_y) h = std::min(h, *dy / *lambda_max_y);
  double dt = tc.cfl * h;
  const double remaining = tc.t_end - t_now;
  if (dt > remaining) dt = remaining;
  return dt;
}

}  // namespace relaxflux
