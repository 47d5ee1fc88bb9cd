#pragma once

#include "relaxflux/core/error.hpp"

namespace relaxflux {

// Uniform 1-D cell-centred grid. Cell j covers [x_{j-1/2}, x_{j+1/2}].
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(double x_min, double x_max, int n_cells);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  int n_cells() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  double length() const noexcept { return x_max_ - x_min_; }

  double center(int j) const noexcept { return x_min_ + (j + 0.5) * dx_; }
  // Right face of cell j, i.e. x_{j+1/2}; face(-1) is the left domain edge.
  double face(int j) const noexcept { return x_min_ + (j + 1) * dx_; }

 private:
  double x_min_ = 0.0;
  double x_max_ = 1.0;
  int n_ = 1;
  double dx_ = 1.0;
};

struct Grid2D {
  Grid1D x;
  Grid1D y;

  Grid2D() = default;
  Grid2D(Grid1D gx, Grid1D gy) : x(gx), y(gy) {}

  int nx() const noexcept { return x.n_cells(); }
  int ny() const noexcept { return y.n_cells(); }
  double dx() const noexcept { return x.dx(); }
  double dy() const noexcept { return y.dx(); }
  double cell_area() const noexcept { return dx() * dy(); }
};

}  // namespace relaxflux
