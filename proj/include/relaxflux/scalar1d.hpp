#pragma once

#include <functional>

#include "relaxflux/boundary.hpp"
#include "relaxflux/core/field.hpp"
#include "relaxflux/core/grid.hpp"
#include "relaxflux/core/limiter.hpp"
#include "relaxflux/core/linalg.hpp"
#include "relaxflux/core/params.hpp"

namespace relaxflux {

// u_t + f(u)_x = (mu phi(u) u_x)_x with phi = b'.
struct ScalarLaw {
  std::function<double(double)> f;
  std::function<double(double)> fprime;
  std::function<double(double)> b;
  std::function<double(double)> phi;
  // Admissible range of u; leaving it raises StateOutOfRange.
  double u_min = -10.0;
  double u_max = 10.0;

  static ScalarLaw burgers();
};

// Cell values U = (u, v) and their x-slopes. Slopes are zero for the
// first-order scheme and recomputed each step by the central scheme.
struct ScalarRelaxState {
  Grid1D grid;
  Field1D<Vec2> U;
  Field1D<Vec2> Ux;
  double t = 0.0;
  long steps = 0;

  ScalarRelaxState() = default;
  explicit ScalarRelaxState(const Grid1D& g) : grid(g), U(g.n_cells(), Vec2::Zero()), Ux(g.n_cells(), Vec2::Zero()) {}
};

enum class ScalarScheme { Upwind1, Upwind2, ImexGrp };

const char* to_string(ScalarScheme s);

Vec2 flux_scalar(const Vec2& U, const RelaxParams& p, const ScalarLaw& law);
Vec2 source_scalar(const Vec2& U, const RelaxParams& p, const ScalarLaw& law);

struct SubcharResult {
  bool holds;
  double margin;  // min over samples of mu phi/eps + a^2 - f'^2
};
SubcharResult subchar_check(const RelaxParams& p, const ScalarLaw& law, double u_lo, double u_hi,
                            int samples = 4001);

// Square of the frozen characteristic speed, mu phi / eps + a^2, between two
// states (phi taken as the secant slope of b so that the flux jump is exact).
double scalar_speed_sq(double ul, double ur, const RelaxParams& p, const ScalarLaw& law);

// U* = (Ul + Ur)/2 - M (Ur - Ul) / (2c).
Vec2 riemann_upwind_scalar(const Vec2& Ul, const Vec2& Ur, const RelaxParams& p,
                           const ScalarLaw& law = ScalarLaw::burgers());

// Largest characteristic speed over the current interfaces.
double max_wave_speed(const ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law);

// Sets U from point values u0 at cell centres and v0 = f(u0) - mu phi(u0) u0'.
// Without du0 the derivative is a central difference of the sampled values.
// Slopes are central differences of the initial cell values.
ScalarRelaxState make_scalar_state(const Grid1D& grid, const std::function<double(double)>& u0,
                                   const std::function<double(double)>& du0, const RelaxParams& p,
                                   const ScalarLaw& law, const Boundary1D& bc);

void fill_ghosts_scalar(ScalarRelaxState& s, const Boundary1D& bc, const RelaxParams& p,
                        const ScalarLaw& law);

// Recomputes central slopes (U_{j+1} - U_{j-1}) / (2 dx) from the ghosts.
void central_slopes_scalar(ScalarRelaxState& s, const Boundary1D& bc, const RelaxParams& p,
                           const ScalarLaw& law);

void step_example1(ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law, double dt,
                   const Boundary1D& bc);
void step_example2(ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law, double dt,
                   const Boundary1D& bc);
void imex_grp_step_scalar(ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law, double dt,
                          const Boundary1D& bc, const Limiter& limiter = Limiter::off());

void step_scalar(ScalarScheme scheme, ScalarRelaxState& s, const RelaxParams& p,
                 const ScalarLaw& law, double dt, const Boundary1D& bc,
                 const Limiter& limiter = Limiter::off());

double total_mass(const ScalarRelaxState& s);

// max_j |v_j - f(u_j) + mu phi(u_j) (u_x)_j| with a central u_x.
double relaxation_residual(const ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law);

}  // namespace relaxflux
