#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "relaxflux/core/grid.hpp"
#include "relaxflux/core/linalg.hpp"
#include "relaxflux/core/params.hpp"

namespace relaxflux::reference {

// Viscous Burgers solution on [0,1] with homogeneous Dirichlet data:
// u = 2 mu pi sin(pi x) e^{-pi^2 mu t} / (2 + e^{-pi^2 mu t} cos(pi x)).
double burgers_exact(double x, double t, double mu);

// Manufactured 2-D flow: rho = 1 + 0.2 sin(pi (x + y - 2t)), u_X = u_Y = 1, p = 1.
struct MmsFields {
  double rho, u, v, p;
};
MmsFields mms_fields(double x, double y, double t);
// Residual of the fields in the Navier-Stokes equations; only the energy
// component, -kappa Laplacian(T) with T = 1/rho, is nonzero.
Vec4 mms_forcing(double x, double y, double t, const RelaxParams& p);

// Exact solution of the Euler Riemann problem sampled at xi = x/t.
// States are primitive (rho, u, p). Throws VacuumFormation.
Vec3 euler_exact_riemann(const Vec3& left, const Vec3& right, double gamma, double xi);
// Star-region pressure and velocity.
std::pair<double, double> euler_star_state(const Vec3& left, const Vec3& right, double gamma);

struct BenchmarkCurve {
  std::vector<double> abscissa;
  std::vector<double> ordinate;
  std::string label;
};

// Blasius boundary layer f''' + f f''/2 = 0 on [0, eta_max] by shooting.
struct BlasiusProfile {
  std::vector<double> eta, f, fp, fpp;
  double fpp0 = 0.0;

  // (U, V) at distance x from the leading edge, height y, free stream 1, Re
  // per unit length; V = (eta f' - f) / (2 sqrt(Re_x)).
  std::pair<double, double> velocity(double x, double y, double re_per_length) const;
  // f' and f at eta by linear interpolation; beyond eta_max f' = 1.
  std::pair<double, double> sample(double eta_value) const;
};
BlasiusProfile blasius_profile(double eta_max = 10.0, int n_points = 2001);
BenchmarkCurve blasius_u_curve(const BlasiusProfile& b);

// Forward-Euler central-difference solver for u_t + (u^2/2)_x = mu u_xx on
// cell centres with Dirichlet face values. Throws BlowUp.
std::vector<double> fd_oracle_burgers(const std::vector<double>& u0, double mu, double dx,
                                      double t_end, const std::function<double(double)>& u_left = {},
                                      const std::function<double(double)>& u_right = {});

// Forward-Euler central-difference solver for the periodic 1-D Navier-Stokes
// equations in conservative variables. Throws BlowUp / NonPhysicalState.
std::vector<Vec3> fd_oracle_ns1(const std::vector<Vec3>& w0, const RelaxParams& p, double dx,
                                double t_end);

struct ErrorReport {
  double l1 = 0.0;
  double linf = 0.0;
  int n_cells = 0;        // per direction
  double measure = 1.0;   // length or area of the domain

  // L1 divided by the domain measure, i.e. the mean absolute error.
  double l1_mean() const { return l1 / measure; }
};

// Point values at cell centres against the exact sampler.
ErrorReport error_norms(const std::vector<double>& numeric, const std::function<double(double)>& exact,
                        const Grid1D& grid);
// Row-major (i fastest) numeric values on a 2-D grid.
ErrorReport error_norms(const std::vector<double>& numeric,
                        const std::function<double(double, double)>& exact, const Grid2D& grid);

struct OrderPair {
  double l1;
  double linf;
};
// log2(coarse/fine); the fine report must have twice the cells per direction.
OrderPair observed_order(const ErrorReport& coarse, const ErrorReport& fine);
double observed_order(double e_coarse, double e_fine);

// Centreline data for the lid-driven cavity, keyed by Reynolds number.
struct GhiaReference {
  std::map<int, BenchmarkCurve> u_vertical;    // U(y) on x = 0.5
  std::map<int, BenchmarkCurve> v_horizontal;  // V(x) on y = 0.5
};
GhiaReference load_ghia_reference(const std::string& path);
// Resolves a data file through RELAXFLUX_DATA_DIR or the source tree.
std::string data_path(const std::string& name);

}  // namespace relaxflux::reference
