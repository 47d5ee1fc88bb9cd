#include <algorithm>
#include <cmath>

#include "relaxflux/core/error.hpp"
#include "relaxflux/gas.hpp"
#include "relaxflux/reference.hpp"

namespace relaxflux::reference {

std::vector<double> fd_oracle_burgers(const std::vector<double>& u0, double mu, double dx, double t_end,
                                      const std::function<double(double)>& u_left,
                                      const std::function<double(double)>& u_right) {
  const int n = static_cast<int>(u0.size());
  if (n < 2 || !(dx > 0.0) || !(mu > 0.0)) {
    throw SolverError(ErrorKind::InvalidArgument, "FD Burgers oracle needs n >= 2, dx > 0, mu > 0");
  }
  double range = 0.0;
  for (double u : u0) range = std::max(range, std::abs(u));
  const double bound = 10.0 * std::max(range, 1e-300);
  std::vector<double> u = u0, next(n);
  double t = 0.0;
  while (t < t_end) {
    double umax = 1e-300;
    for (double v : u) umax = std::max(umax, std::abs(v));
    double dt = 0.25 * std::min(dx * dx / mu, dx / umax);
    dt = std::min(dt, t_end - t);
    const double ul = u_left ? u_left(t) : 0.0, ur = u_right ? u_right(t) : 0.0;
    auto at = [&](int j) {
      if (j < 0) return 2.0 * ul - u[0];
      if (j >= n) return 2.0 * ur - u[n - 1];
      return u[j];
    };
    for (int j = 0; j < n; ++j) {
      const double a = at(j - 1), b = u[j], c = at(j + 1);
      next[j] = b - dt * (0.5 * c * c - 0.5 * a * a) / (2.0 * dx) + dt * mu * (c - 2.0 * b + a) / (dx * dx);
      if (!std::isfinite(next[j]) || std::abs(next[j]) > bound) {
        throw SolverError(ErrorKind::BlowUp, "FD Burgers oracle blew up", {std::nullopt, j, std::nullopt});
      }
    }
    u.swap(next);
    t += dt;
  }
  return u;
}

std::vector<Vec3> fd_oracle_ns1(const std::vector<Vec3>& w0, const RelaxParams& p, double dx, double t_end) {
  const int n = static_cast<int>(w0.size());
  if (n < 3 || !(dx > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "FD NS oracle needs n >= 3, dx > 0");
  const gas::Consts c(p);
  const double g = c.gamma;
  std::vector<Vec3> w = w0, next(n), q(n), f(n);
  double t = 0.0;
  double mass0 = 0.0;
  for (const auto& v : w0) mass0 = std::max(mass0, v.cwiseAbs().maxCoeff());
  while (t < t_end) {
    double smax = 1e-300, rho_min = 1e300;
    for (int j = 0; j < n; ++j) {
      q[j] = gas::prim_from_cons<1>(w[j], g);
      f[j] = gas::euler_flux<1>(w[j], g);
      smax = std::max(smax, std::abs(q[j][1]) + std::sqrt(g * q[j][2]));
      rho_min = std::min(rho_min, q[j][0]);
    }
    const double D = std::max({4.0 / 3.0 * c.mu, c.kappa * (g - 1.0), 1e-300}) / rho_min;
    double dt = 0.2 * std::min({dx / smax, dx * dx / D, 2.0 * D / (smax * smax)});
    dt = std::min(dt, t_end - t);
    auto idx = [n](int j) { return (j % n + n) % n; };
    // Viscous flux at face j+1/2.
    auto visc = [&](int j) {
      const Vec3& a = q[idx(j)];
      const Vec3& b = q[idx(j + 1)];
      const double ux = (b[1] - a[1]) / dx, Tx = (b[2] - a[2]) / dx;
      const double u = 0.5 * (a[1] + b[1]);
      return Vec3(0.0, 4.0 / 3.0 * c.mu * ux, 4.0 / 3.0 * c.mu * u * ux + c.kappa * Tx);
    };
    for (int j = 0; j < n; ++j) {
      next[j] = w[j] - dt * (f[idx(j + 1)] - f[idx(j - 1)]) / (2.0 * dx) + dt * (visc(j) - visc(j - 1)) / dx;
      if (!next[j].allFinite() || next[j].cwiseAbs().maxCoeff() > 1e3 * mass0) {
        throw SolverError(ErrorKind::BlowUp, "FD Navier-Stokes oracle blew up", {std::nullopt, j, std::nullopt});
      }
    }
    w.swap(next);
    t += dt;
  }
  return w;
}

ErrorReport error_norms(const std::vector<double>& numeric, const std::function<double(double)>& exact,
                        const Grid1D& grid) {
  if (static_cast<int>(numeric.size()) != grid.n_cells()) {
    throw SolverError(ErrorKind::GridMismatch, "field size does not match the grid");
  }
  ErrorReport r;
  r.n_cells = grid.n_cells();
  r.measure = grid.length();
  for (int j = 0; j < grid.n_cells(); ++j) {
    const double e = std::abs(numeric[j] - exact(grid.center(j)));
    r.l1 += e * grid.dx();
    r.linf = std::max(r.linf, e);
  }
  return r;
}

ErrorReport error_norms(const std::vector<double>& numeric, const std::function<double(double, double)>& exact,
                        const Grid2D& grid) {
  const int nx = grid.nx(), ny = grid.ny();
  if (static_cast<int>(numeric.size()) != nx * ny) {
    throw SolverError(ErrorKind::GridMismatch, "field size does not match the grid");
  }
  ErrorReport r;
  r.n_cells = nx;
  r.measure = grid.x.length() * grid.y.length();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double e = std::abs(numeric[i + j * nx] - exact(grid.x.center(i), grid.y.center(j)));
      r.l1 += e * grid.cell_area();
      r.linf = std::max(r.linf, e);
    }
  return r;
}

double observed_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
    throw SolverError(ErrorKind::InvalidArgument, "orders need positive errors");
  }
  return std::log2(e_coarse / e_fine);
}

OrderPair observed_order(const ErrorReport& coarse, const ErrorReport& fine) {
  if (fine.n_cells != 2 * coarse.n_cells) {
    throw SolverError(ErrorKind::GridMismatch, "observed order needs a 2:1 refinement");
  }
  return {observed_order(coarse.l1, fine.l1), observed_order(coarse.linf, fine.linf)};
}

}  // namespace relaxflux::reference
