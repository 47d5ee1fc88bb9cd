#include "relaxflux/core/grid.hpp"

#include <cmath>
#include <string>

namespace relaxflux {

Grid1D::Grid1D(double x_min, double x_max, int n_cells)
    : x_min_(x_min), x_max_(x_max), n_(n_cells) {
  if (n_cells <= 0) {
    throw SolverError(ErrorKind::InvalidArgument,
                      "grid needs a positive cell count, got " + std::to_string(n_cells));
  }
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw SolverError(ErrorKind::InvalidArgument, "grid extent must satisfy x_min < x_max");
  }
  dx_ = (x_max - x_min) / n_cells;
}

}  // namespace relaxflux
