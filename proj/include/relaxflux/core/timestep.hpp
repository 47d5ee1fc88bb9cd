#pragma once

#include <optional>

#include "relaxflux/core/params.hpp"

namespace relaxflux {

// dt = cfl * min(dx/lambda_x, dy/lambda_y), clipped so that t + dt <= t_end.
// The y-term is skipped when lambda_y/dy are absent.
double compute_dt(double lambda_max_x, double dx, std::optional<double> lambda_max_y,
                  std::optional<double> dy, const TimeControl& tc, double t_now = 0.0);

}  // namespace relaxflux
