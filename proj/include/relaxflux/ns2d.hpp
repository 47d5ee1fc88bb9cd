#pragma once

#include <functional>

#include "relaxflux/boundary.hpp"
#include "relaxflux/core/field.hpp"
#include "relaxflux/core/grid.hpp"
#include "relaxflux/core/limiter.hpp"
#include "relaxflux/core/linalg.hpp"
#include "relaxflux/core/params.hpp"

namespace relaxflux {

// U = (w, v_X, v_Y) with w = (rho, m_X, m_Y, E). Sx holds (d_x w, d_x v_X)
// and Sy holds (d_y w, d_y v_Y).
struct GasState2D {
  Grid2D grid;
  Field2D<Vec12> U;
  Field2D<Vec8> Sx;
  Field2D<Vec8> Sy;
  double t = 0.0;
  long steps = 0;

  GasState2D() = default;
  explicit GasState2D(const Grid2D& g)
      : grid(g),
        U(g.nx(), g.ny(), Vec12::Zero()),
        Sx(g.nx(), g.ny(), Vec8::Zero()),
        Sy(g.nx(), g.ny(), Vec8::Zero()) {}
};

// Source added to the w-update, evaluated at (x, y, t).
using Forcing2D = std::function<Vec4(double, double, double)>;

// Viscous blocks in primitive variables (rho, u_X, u_Y, T).
struct ViscousBlocks2D {
  Mat4 XX, XY, YX, YY;
};
ViscousBlocks2D viscous_blocks_2d(const Vec4& q, const RelaxParams& p);

// F = (v_X, F_vX(w), F_vY(w)) and G = (v_Y, G_vX(w), G_vY(w)).
Vec12 flux_x_2d(const Vec12& U, const RelaxParams& p);
Vec12 flux_y_2d(const Vec12& U, const RelaxParams& p);

// Euler fluxes in x and y.
Vec4 euler_flux_x_2d(const Vec4& w, double gamma);
Vec4 euler_flux_y_2d(const Vec4& w, double gamma);

// (0, h_vX, 0) from the primitive state and its y-gradient when axis = 1,
// (0, 0, h_vY) from the x-gradient when axis = 0.
Vec12 mixed_source_h(const Vec4& q, const Vec4& grad, int axis, const RelaxParams& p);

struct QuasiGrpResult {
  Vec8 star;   // Riemann state (w, v_X)
  Vec8 mid;    // U^{n+1/2} on the face
  Vec8 minus;  // U^{n+1,-}
  double speed;
};

// x-face solve for U^X = (w, v_X). sl, sr are x-slopes (d_x w, d_x v_X) and
// tl, tr the tangential slopes (d_y w, d_y v_Y) of the two cells.
QuasiGrpResult quasi1d_grp_x(const Vec8& Ul, const Vec8& Ur, const Vec8& sl, const Vec8& sr,
                             const Vec8& tl, const Vec8& tr, const RelaxParams& p, double dt);

// M^Y applied to tangential slopes at the frozen state w.
Vec8 tangential_operator(const Vec4& w, const Vec8& t, const RelaxParams& p);

// Sets w from primitive point values (rho, u_X, u_Y, p) at cell centres and
// v_X, v_Y at equilibrium with central (one-sided at the edges) gradients.
GasState2D make_gas_state_2d(const Grid2D& grid, const std::function<Vec4(double, double)>& prim,
                             const RelaxParams& p, const Boundary2D& bc,
                             const Limiter& limiter = Limiter::off());

void equilibrate_2d(GasState2D& s, const RelaxParams& p, const Boundary2D& bc,
                    const Limiter& limiter = Limiter::off());

void fill_ghosts_ns2(GasState2D& s, const Boundary2D& bc, const RelaxParams& p);

struct WaveSpeeds2D {
  double x;
  double y;
};
// Upper bound of the block spectral radii, sqrt(a^2 + max(4mu/3, mu,
// kappa (gamma-1)) / (eps rho_min)), used for both axes.
WaveSpeeds2D max_wave_speed_ns2(const GasState2D& s, const RelaxParams& p);

// One step. Throws CFLViolation if dt exceeds the Courant limit seen by the
// interface solves by more than 5%.
void step_ns2(GasState2D& s, const RelaxParams& p, double dt, const Boundary2D& bc,
              const Limiter& limiter = Limiter::off(), const Forcing2D& forcing = {});

Vec4 conserved_totals(const GasState2D& s);

void check_gas_cells(const GasState2D& s, double gamma);

}  // namespace relaxflux
