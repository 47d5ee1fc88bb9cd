#include "relaxflux/scalar1d.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "relaxflux/core/eigen_block.hpp"

namespace relaxflux {

ScalarLaw ScalarLaw::burgers() {
  ScalarLaw law;
  law.f = [](double u) { return 0.5 * u * u; };
  law.fprime = [](double u) { return u; };
  law.b = [](double u) { return u; };
  law.phi = [](double) { return 1.0; };
  return law;
}

const char* to_string(ScalarScheme s) {
  switch (s) {
    case ScalarScheme::Upwind1: return "upwind1";
    case ScalarScheme::Upwind2: return "upwind2";
    case ScalarScheme::ImexGrp: return "imex_grp";
  }
  return "unknown";
}

Vec2 flux_scalar(const Vec2& U, const RelaxParams& p, const ScalarLaw& law) {
  return Vec2(U[1], (p.mu / p.epsilon) * law.b(U[0]) + p.a * p.a * U[0]);
}

Vec2 source_scalar(const Vec2& U, const RelaxParams& p, const ScalarLaw& law) {
  return Vec2(0.0, (law.f(U[0]) - U[1]) / p.epsilon);
}

SubcharResult subchar_check(const RelaxParams& p, const ScalarLaw& law, double u_lo, double u_hi,
                            int samples) {
  if (u_lo > u_hi) throw SolverError(ErrorKind::InvalidArgument, "subchar_check needs u_lo <= u_hi");
  samples = std::max(samples, 2);
  double margin = 1e300;
  for (int k = 0; k < samples; ++k) {
    const double u = u_lo + (u_hi - u_lo) * k / (samples - 1);
    const double fp = law.fprime(u);
    margin = std::min(margin, p.mu * law.phi(u) / p.epsilon + p.a * p.a - fp * fp);
  }
  return {margin >= 0.0, margin};
}

double scalar_speed_sq(double ul, double ur, const RelaxParams& p, const ScalarLaw& law) {
  const double du = ur - ul;
  const double phi = std::abs(du) > 1e-12 * (1.0 + std::abs(ul) + std::abs(ur))
                         ? (law.b(ur) - law.b(ul)) / du
                         : law.phi(0.5 * (ul + ur));
  return p.mu * phi / p.epsilon + p.a * p.a;
}

namespace {

BlockWaves<1> waves_for(double c2) {
  if (!(c2 > 0.0)) throw SolverError(ErrorKind::ZeroWaveSpeed, "mu phi/eps + a^2 is not positive");
  BlockWaves<1> w;
  w.V(0, 0) = 1.0;
  w.Vinv(0, 0) = 1.0;
  w.sigma[0] = std::sqrt(c2);
  return w;
}

}  // namespace

Vec2 riemann_upwind_scalar(const Vec2& Ul, const Vec2& Ur, const RelaxParams& p, const ScalarLaw& law) {
  const double c2 = scalar_speed_sq(Ul[0], Ur[0], p, law);
  if (!(c2 > 0.0)) throw SolverError(ErrorKind::ZeroWaveSpeed, "mu phi/eps + a^2 is zero");
  const double c = std::sqrt(c2);
  const Vec2 d = Ur - Ul;
  // M d = (d_v, c^2 d_u)
  return 0.5 * (Ul + Ur) - (0.5 / c) * Vec2(d[1], c2 * d[0]);
}

double max_wave_speed(const ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law) {
  const int n = s.grid.n_cells();
  double m = 0.0;
  for (int j = -1; j < n; ++j) {
    const int l = std::max(j, 0), r = std::min(j + 1, n - 1);
    m = std::max(m, scalar_speed_sq(s.U(l)[0], s.U(r)[0], p, law));
  }
  return std::sqrt(m);
}

namespace {

void fill_edge(ScalarRelaxState& s, const BoundarySpec& spec, bool left, const RelaxParams& p,
               const ScalarLaw& law) {
  const int n = s.grid.n_cells();
  const double dx = s.grid.dx();
  for (int k = 1; k <= kGhost; ++k) {
    const int ghost = left ? -k : n - 1 + k;
    const int mirror = left ? k - 1 : n - k;
    const int wrap = left ? n - k : k - 1;
    const int edge = left ? 0 : n - 1;
    switch (spec.kind) {
      case BoundaryKind::Periodic:
        s.U(ghost) = s.U(wrap);
        s.Ux(ghost) = s.Ux(wrap);
        break;
      case BoundaryKind::DirichletScalar: {
        const Vec2 ub = scalar_dirichlet_state(s.U(edge)[0], spec.u_b(s.t), p.mu, dx, left ? -1 : 1,
                                               law.f, law.phi);
        s.U(ghost) = 2.0 * ub - s.U(mirror);
        s.Ux(ghost) = s.Ux(mirror);
        break;
      }
      case BoundaryKind::NeumannScalar:
        s.U(ghost) = s.U(mirror);
        s.Ux(ghost) = -s.Ux(mirror);
        break;
      default:
        s.U(ghost) = s.U(edge);
        s.Ux(ghost) = Vec2::Zero();
        break;
    }
  }
}

// Pinned state on a boundary face, for Dirichlet/Neumann edges.
Vec2 pinned_state(const ScalarRelaxState& s, const BoundarySpec& spec, bool left, const RelaxParams& p,
                  const ScalarLaw& law) {
  const int edge = left ? 0 : s.grid.n_cells() - 1;
  if (spec.kind == BoundaryKind::DirichletScalar) {
    return scalar_dirichlet_state(s.U(edge)[0], spec.u_b(s.t), p.mu, s.grid.dx(), left ? -1 : 1, law.f,
                                  law.phi);
  }
  return scalar_neumann_state(s.U(edge)[0], law.f);
}

void check_cells(const ScalarRelaxState& s, const ScalarLaw& law) {
  for (int j = 0; j < s.grid.n_cells(); ++j) {
    const Vec2& U = s.U(j);
    if (!std::isfinite(U[0]) || !std::isfinite(U[1])) {
      throw SolverError(ErrorKind::NonFiniteState, "non-finite scalar state",
                        {s.steps, j, std::nullopt});
    }
    if (U[0] < law.u_min || U[0] > law.u_max) {
      throw SolverError(ErrorKind::StateOutOfRange,
                        "u = " + std::to_string(U[0]) + " left the admissible range",
                        {s.steps, j, std::nullopt});
    }
  }
}

// Flux-difference update with a theta-weighted implicit relaxation source:
// v_new (1 + theta dt/eps) = v* + (1-theta) dt/eps (f(u_n) - v_n) + theta dt/eps f(u_new).
void cell_update(ScalarRelaxState& s, const std::vector<Vec2>& flux, const RelaxParams& p,
                 const ScalarLaw& law, double dt, double theta) {
  const int n = s.grid.n_cells();
  const double r = dt / s.grid.dx();
  const double k = dt / p.epsilon;
  for (int j = 0; j < n; ++j) {
    const Vec2 Un = s.U(j);
    const Vec2 star = Un - r * (flux[j + 1] - flux[j]);
    const double u = star[0];
    const double explicit_src = (1.0 - theta) * k * (law.f(Un[0]) - Un[1]);
    const double v = (star[1] + explicit_src + theta * k * law.f(u)) / (1.0 + theta * k);
    s.U(j) = Vec2(u, v);
  }
}

void upwind_step(ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law, double dt,
                 const Boundary1D& bc, bool second_order) {
  const int n = s.grid.n_cells();
  const double h = 0.5 * s.grid.dx();
  const BoundarySpec& L = bc.left.at(s.grid.x_min());
  const BoundarySpec& R = bc.right.at(s.grid.x_max());
  fill_ghosts_scalar(s, bc, p, law);
  if (second_order) {
    central_slopes_scalar(s, bc, p, law);
  } else {
    for (int j = -kGhost; j < n + kGhost; ++j) s.Ux(j) = Vec2::Zero();
  }
  std::vector<Vec2> flux(n + 1);
  for (int j = -1; j < n; ++j) {
    Vec2 face;
    if (j == -1 && L.pins_face()) {
      face = riemann_upwind_scalar(pinned_state(s, L, true, p, law), s.U(0) - h * s.Ux(0), p, law);
    } else if (j == n - 1 && R.pins_face()) {
      face = riemann_upwind_scalar(s.U(n - 1) + h * s.Ux(n - 1), pinned_state(s, R, false, p, law), p, law);
    } else {
      face = riemann_upwind_scalar(s.U(j) + h * s.Ux(j), s.U(j + 1) - h * s.Ux(j + 1), p, law);
    }
    flux[j + 1] = flux_scalar(face, p, law);
  }
  cell_update(s, flux, p, law, dt, 1.0);
  s.t += dt;
  ++s.steps;
  check_cells(s, law);
}

}  // namespace

void fill_ghosts_scalar(ScalarRelaxState& s, const Boundary1D& bc, const RelaxParams& p,
                        const ScalarLaw& law) {
  fill_edge(s, bc.left.at(s.grid.x_min()), true, p, law);
  fill_edge(s, bc.right.at(s.grid.x_max()), false, p, law);
}

void central_slopes_scalar(ScalarRelaxState& s, const Boundary1D& bc, const RelaxParams& p,
                           const ScalarLaw& law) {
  fill_ghosts_scalar(s, bc, p, law);
  const double inv = 0.5 / s.grid.dx();
  for (int j = 0; j < s.grid.n_cells(); ++j) s.Ux(j) = inv * (s.U(j + 1) - s.U(j - 1));
  fill_ghosts_scalar(s, bc, p, law);
}

ScalarRelaxState make_scalar_state(const Grid1D& grid, const std::function<double(double)>& u0,
                                   const std::function<double(double)>& du0, const RelaxParams& p,
                                   const ScalarLaw& law, const Boundary1D& bc) {
  p.validate();
  bc.validate_scalar();
  ScalarRelaxState s(grid);
  const int n = grid.n_cells();
  const double dx = grid.dx();
  for (int j = 0; j < n; ++j) {
    const double x = grid.center(j);
    const double u = u0(x);
    const double ux = du0 ? du0(x) : (u0(x + dx) - u0(x - dx)) / (2.0 * dx);
    s.U(j) = Vec2(u, law.f(u) - p.mu * law.phi(u) * ux);
  }
  central_slopes_scalar(s, bc, p, law);
  return s;
}

void step_example1(ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law, double dt,
                   const Boundary1D& bc) {
  upwind_step(s, p, law, dt, bc, false);
}

void step_example2(ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law, double dt,
                   const Boundary1D& bc) {
  upwind_step(s, p, law, dt, bc, true);
}

void imex_grp_step_scalar(ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law, double dt,
                          const Boundary1D& bc, const Limiter& limiter) {
  const int n = s.grid.n_cells();
  const double dx = s.grid.dx();
  const double h = 0.5 * dx;
  const BoundarySpec& L = bc.left.at(s.grid.x_min());
  const BoundarySpec& R = bc.right.at(s.grid.x_max());
  fill_ghosts_scalar(s, bc, p, law);

  auto advance = [&](const Vec2& U, const Vec2& D, double tau) {
    const double u = U[0] + tau * D[0];
    const double k = tau / p.epsilon;
    return Vec2(u, (U[1] + tau * D[1] + k * law.f(u)) / (1.0 + k));
  };

  std::vector<Vec2> flux(n + 1), minus(n + 1);
  for (int j = -1; j < n; ++j) {
    const bool left_wall = j == -1 && L.pins_face();
    const bool right_wall = j == n - 1 && R.pins_face();
    Vec2 star, D;
    if (left_wall || right_wall) {
      const BoundarySpec& spec = left_wall ? L : R;
      // The prescribed wall state meets the interior limit in a Riemann
      // problem; pinning it outright is unstable once mu dt/dx^2 > 1/2.
      const Vec2 pinned = pinned_state(s, spec, left_wall, p, law);
      star = left_wall ? riemann_upwind_scalar(pinned, s.U(0) - h * s.Ux(0), p, law)
                       : riemann_upwind_scalar(s.U(n - 1) + h * s.Ux(n - 1), pinned, p, law);
      const BlockWaves<1> w = waves_for(scalar_speed_sq(star[0], star[0], p, law));
      const Vec2 out = left_wall ? Vec2(-w.apply_lambda_minus(s.Ux(0)))
                                 : Vec2(-w.apply_lambda_plus(s.Ux(n - 1)));
      Eigen::Matrix<double, 1, 2> C;
      Vec<1> target;
      if (spec.kind == BoundaryKind::DirichletScalar) {
        C << 1.0, 0.0;
        target[0] = spec.du_b ? spec.du_b(s.t) : 0.0;
      } else {
        C << -law.fprime(star[0]), 1.0;
        target[0] = 0.0;
      }
      D = one_sided_derivative<1, 1>(w, out, left_wall, C, target);
    } else {
      const Vec2 Ul = s.U(j) + h * s.Ux(j);
      const Vec2 Ur = s.U(j + 1) - h * s.Ux(j + 1);
      star = riemann_upwind_scalar(Ul, Ur, p, law);
      const BlockWaves<1> w = waves_for(scalar_speed_sq(star[0], star[0], p, law));
      D = -w.apply_lambda_plus(s.Ux(j)) - w.apply_lambda_minus(s.Ux(j + 1));
    }
    flux[j + 1] = flux_scalar(advance(star, D, 0.5 * dt), p, law);
    minus[j + 1] = advance(star, D, dt);
  }

  cell_update(s, flux, p, law, dt, 0.5);
  for (int j = 0; j < n; ++j) s.Ux(j) = (minus[j + 1] - minus[j]) / dx;
  s.t += dt;
  ++s.steps;
  check_cells(s, law);
  fill_ghosts_scalar(s, bc, p, law);
  if (limiter.enabled) {
    std::vector<Vec2> limited(n);
    for (int j = 0; j < n; ++j) {
      const Vec2 fwd = limiter.alpha * (s.U(j + 1) - s.U(j)) / dx;
      const Vec2 bwd = limiter.alpha * (s.U(j) - s.U(j - 1)) / dx;
      for (int k = 0; k < 2; ++k) limited[j][k] = minmod3(fwd[k], s.Ux(j)[k], bwd[k]);
    }
    for (int j = 0; j < n; ++j) s.Ux(j) = limited[j];
  }
}

void step_scalar(ScalarScheme scheme, ScalarRelaxState& s, const RelaxParams& p,
                 const ScalarLaw& law, double dt, const Boundary1D& bc, const Limiter& limiter) {
  switch (scheme) {
    case ScalarScheme::Upwind1: step_example1(s, p, law, dt, bc); break;
    case ScalarScheme::Upwind2: step_example2(s, p, law, dt, bc); break;
    case ScalarScheme::ImexGrp: imex_grp_step_scalar(s, p, law, dt, bc, limiter); break;
  }
}

double total_mass(const ScalarRelaxState& s) {
  double m = 0.0;
  for (int j = 0; j < s.grid.n_cells(); ++j) m += s.U(j)[0];
  return m * s.grid.dx();
}

double relaxation_residual(const ScalarRelaxState& s, const RelaxParams& p, const ScalarLaw& law) {
  double r = 0.0;
  const double inv = 0.5 / s.grid.dx();
  for (int j = 0; j < s.grid.n_cells(); ++j) {
    const double u = s.U(j)[0];
    const double ux = inv * (s.U(j + 1)[0] - s.U(j - 1)[0]);
    r = std::max(r, std::abs(s.U(j)[1] - law.f(u) + p.mu * law.phi(u) * ux));
  }
  return r;
}

}  // namespace relaxflux
