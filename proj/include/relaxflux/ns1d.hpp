#pragma once

#include <functional>

#include "relaxflux/boundary.hpp"
#include "relaxflux/core/eigen_block.hpp"
#include "relaxflux/core/field.hpp"
#include "relaxflux/core/grid.hpp"
#include "relaxflux/core/limiter.hpp"
#include "relaxflux/core/linalg.hpp"
#include "relaxflux/core/params.hpp"

namespace relaxflux {

// U = (rho, m, E, v1, v2, v3) per cell, with x-slopes of all six.
struct GasState1D {
  Grid1D grid;
  Field1D<Vec6> U;
  Field1D<Vec6> Ux;
  double t = 0.0;
  long steps = 0;

  GasState1D() = default;
  explicit GasState1D(const Grid1D& g)
      : grid(g), U(g.n_cells(), Vec6::Zero()), Ux(g.n_cells(), Vec6::Zero()) {}
};

// (rho, u, T) <-> (rho, m, E); NonPhysicalState on rho <= 0 or p <= 0.
Vec3 prim_from_cons(const Vec3& w, double gamma);
Vec3 cons_from_prim(const Vec3& q, double gamma);

// Euler flux f(w) = (m, u m + p, u (E + p)).
Vec3 euler_flux_1d(const Vec3& w, double gamma);

Vec6 flux_ns1(const Vec6& U, const RelaxParams& p);
Vec6 source_ns1(const Vec6& U, const RelaxParams& p);

struct EntropyPair {
  double eta;  // -rho S
  double g;    // -rho u S
  double S;    // ln(T rho^(1-gamma)) / (gamma - 1)
};
EntropyPair entropy_pair(const Vec3& w, double gamma);

struct RoeMatrix1D {
  Mat<6> M;
  WaveDecomposition<6> waves;
};

// M~ with F(Ur) - F(Ul) = M~ (Ur - Ul); wl == wr gives the frozen Jacobian.
RoeMatrix1D roe_matrix_1d(const Vec3& wl, const Vec3& wr, const RelaxParams& p);

// (Ul + Ur)/2 - R~ sign(Lambda~) R~^-1 (Ur - Ul) / 2.
Vec6 roe_solve_1d(const Vec6& Ul, const Vec6& Ur, const RelaxParams& p);

// Sets w from primitive point values (rho, u, p) at cell centres and
// v0 = f(w0) - B(w0) d_x w~0, with one-sided differences at the two ends.
// Slopes are central differences, limited when the limiter is enabled.
GasState1D make_gas_state_1d(const Grid1D& grid, const std::function<Vec3(double)>& rho_u_p,
                             const RelaxParams& p, const Boundary1D& bc,
                             const Limiter& limiter = Limiter::off());

// Resets v to its equilibrium value for the current w and recomputes slopes.
void equilibrate_1d(GasState1D& s, const RelaxParams& p, const Boundary1D& bc,
                    const Limiter& limiter = Limiter::off());

void fill_ghosts_ns1(GasState1D& s, const Boundary1D& bc, const RelaxParams& p);

// Largest |lambda| over the interface Roe decompositions.
double max_wave_speed_ns1(const GasState1D& s, const RelaxParams& p);

void imex_grp_step_ns1(GasState1D& s, const RelaxParams& p, double dt, const Boundary1D& bc,
                       const Limiter& limiter = Limiter::off());

// Sum over cells of -rho S dx.
double entropy_total(const GasState1D& s, double gamma);

// Sum over cells of w dx.
Vec3 conserved_totals(const GasState1D& s);

// Throws NonFiniteState / NonPhysicalState carrying step and cell index.
void check_gas_cells(const GasState1D& s, double gamma);

}  // namespace relaxflux
