#include "relaxflux/ns1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "relaxflux/core/parallel.hpp"
#include "relaxflux/detail/gas_face.hpp"
#include "relaxflux/gas.hpp"

namespace relaxflux {

Vec3 prim_from_cons(const Vec3& w, double gamma) { return gas::prim_from_cons<1>(w, gamma); }
Vec3 cons_from_prim(const Vec3& q, double gamma) { return gas::cons_from_prim<1>(q, gamma); }
Vec3 euler_flux_1d(const Vec3& w, double gamma) { return gas::euler_flux<1>(w, gamma); }

Vec6 flux_ns1(const Vec6& U, const RelaxParams& p) {
  const gas::Consts c(p);
  Vec6 F;
  F.head<3>() = U.tail<3>();
  F.tail<3>() = gas::relax_flux<1>(U.head<3>(), c);
  return F;
}

Vec6 source_ns1(const Vec6& U, const RelaxParams& p) {
  Vec6 H = Vec6::Zero();
  H.tail<3>() = (gas::euler_flux<1>(U.head<3>(), p.g()) - U.tail<3>()) / p.epsilon;
  return H;
}

EntropyPair entropy_pair(const Vec3& w, double gamma) {
  const Vec3 q = gas::prim_from_cons<1>(w, gamma);
  const double S = std::log(q[2] * std::pow(q[0], 1.0 - gamma)) / (gamma - 1.0);
  return {-q[0] * S, -q[0] * q[1] * S, S};
}

RoeMatrix1D roe_matrix_1d(const Vec3& wl, const Vec3& wr, const RelaxParams& p) {
  const gas::Consts c(p);
  const Mat3 K = gas::roe_block<1>(wl, wr, c);
  RoeMatrix1D out;
  out.M = Mat<6>::Zero();
  out.M.topRightCorner<3, 3>() = Mat3::Identity();
  out.M.bottomLeftCorner<3, 3>() = K;
  out.waves = block_waves<3>(K).dense();
  return out;
}

Vec6 roe_solve_1d(const Vec6& Ul, const Vec6& Ur, const RelaxParams& p) {
  return detail::roe_state<1>(Ul, Ur, gas::Consts(p));
}

namespace {

Vec6 equilibrium(const Vec3& w, const Vec3& dq, const gas::Consts& c) {
  const Vec3 q = gas::prim_from_cons<1>(w, c.gamma);
  Vec6 U;
  U.head<3>() = w;
  U.tail<3>() = gas::euler_flux<1>(w, c.gamma) - gas::visc_xx<1>(q, c) * dq;
  return U;
}

void fill_edge(GasState1D& s, const BoundarySpec& spec, bool left, const gas::Consts& c) {
  const int n = s.grid.n_cells();
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
      case BoundaryKind::Symmetric:
      case BoundaryKind::WallAdiabatic:
      case BoundaryKind::WallIsothermal:
      case BoundaryKind::MovingWall:
        for (int m = 0; m < 6; ++m) {
          const double par = gas1d_parity(m);
          s.U(ghost)[m] = par * s.U(mirror)[m];
          s.Ux(ghost)[m] = -par * s.Ux(mirror)[m];
        }
        break;
      case BoundaryKind::Inflow: {
        const auto& pr = spec.inflow_primitive;
        const Vec3 w = gas::cons_from_prim<1>(Vec3(pr[0], pr[1], pr[2] / pr[0]), c.gamma);
        s.U(ghost) = equilibrium(w, Vec3::Zero(), c);
        s.Ux(ghost) = Vec6::Zero();
        break;
      }
      default:
        s.U(ghost) = s.U(edge);
        s.Ux(ghost) = Vec6::Zero();
        break;
    }
  }
}

void limit_slopes(GasState1D& s, const Limiter& limiter, double gamma) {
  const int n = s.grid.n_cells();
  const double dx = s.grid.dx();
  if (limiter.enabled) {
    std::vector<Vec6> limited(n);
    for (int j = 0; j < n; ++j) {
      const Vec6 fwd = limiter.alpha * (s.U(j + 1) - s.U(j)) / dx;
      const Vec6 bwd = limiter.alpha * (s.U(j) - s.U(j - 1)) / dx;
      for (int k = 0; k < 6; ++k) limited[j][k] = minmod3(fwd[k], s.Ux(j)[k], bwd[k]);
    }
    for (int j = 0; j < n; ++j) s.Ux(j) = limited[j];
  }
  for (int j = 0; j < n; ++j) detail::enforce_admissible_slope<1>(s.U(j), s.Ux(j), 0.5 * dx, gamma);
}

void central_slopes(GasState1D& s, const Boundary1D& bc, const RelaxParams& p, const Limiter& limiter) {
  fill_ghosts_ns1(s, bc, p);
  const double inv = 0.5 / s.grid.dx();
  for (int j = 0; j < s.grid.n_cells(); ++j) s.Ux(j) = inv * (s.U(j + 1) - s.U(j - 1));
  fill_ghosts_ns1(s, bc, p);
  limit_slopes(s, limiter, p.g());
  fill_ghosts_ns1(s, bc, p);
}

}  // namespace

void fill_ghosts_ns1(GasState1D& s, const Boundary1D& bc, const RelaxParams& p) {
  const gas::Consts c(p);
  fill_edge(s, bc.left.at(s.grid.x_min()), true, c);
  fill_edge(s, bc.right.at(s.grid.x_max()), false, c);
}

void equilibrate_1d(GasState1D& s, const RelaxParams& p, const Boundary1D& bc, const Limiter& limiter) {
  const gas::Consts c(p);
  const int n = s.grid.n_cells();
  const double dx = s.grid.dx();
  std::vector<Vec3> q(n);
  for (int j = 0; j < n; ++j) q[j] = gas::prim_from_cons<1>(s.U(j).head<3>(), c.gamma);
  for (int j = 0; j < n; ++j) {
    Vec3 dq = Vec3::Zero();
    if (n > 1) {
      if (j == 0) dq = (q[1] - q[0]) / dx;
      else if (j == n - 1) dq = (q[n - 1] - q[n - 2]) / dx;
      else dq = (q[j + 1] - q[j - 1]) / (2.0 * dx);
    }
    s.U(j) = equilibrium(s.U(j).head<3>(), dq, c);
  }
  central_slopes(s, bc, p, limiter);
}

GasState1D make_gas_state_1d(const Grid1D& grid, const std::function<Vec3(double)>& rho_u_p,
                             const RelaxParams& p, const Boundary1D& bc, const Limiter& limiter) {
  p.validate();
  if (!p.is_gas()) throw SolverError(ErrorKind::InvalidArgument, "gas solver needs gamma and Prandtl number");
  bc.validate_gas();
  GasState1D s(grid);
  for (int j = 0; j < grid.n_cells(); ++j) {
    const Vec3 r = rho_u_p(grid.center(j));
    s.U(j).head<3>() = gas::cons_from_prim<1>(Vec3(r[0], r[1], r[2] / r[0]), p.g());
  }
  equilibrate_1d(s, p, bc, limiter);
  return s;
}

double max_wave_speed_ns1(const GasState1D& s, const RelaxParams& p) {
  const gas::Consts c(p);
  const int n = s.grid.n_cells();
  double m = 0.0;
  for (int j = -1; j < n; ++j) {
    const int l = std::max(j, 0), r = std::min(j + 1, n - 1);
    const Mat3 K = gas::roe_block<1>(s.U(l).head<3>(), s.U(r).head<3>(), c);
    m = std::max(m, block_waves<3>(K).spectral_radius());
  }
  return m;
}

void check_gas_cells(const GasState1D& s, double gamma) {
  for (int j = 0; j < s.grid.n_cells(); ++j) {
    const Vec6& U = s.U(j);
    if (!U.allFinite()) {
      throw SolverError(ErrorKind::NonFiniteState, "non-finite gas state", {s.steps, j, std::nullopt});
    }
    try {
      gas::prim_from_cons<1>(U.head<3>(), gamma);
    } catch (const SolverError& e) {
      throw e.at({s.steps, j, std::nullopt});
    }
  }
}

void imex_grp_step_ns1(GasState1D& s, const RelaxParams& p, double dt, const Boundary1D& bc,
                       const Limiter& limiter) {
  const gas::Consts c(p);
  const int n = s.grid.n_cells();
  const double dx = s.grid.dx();
  const double h = 0.5 * dx;
  const BoundarySpec& L = bc.left.at(s.grid.x_min());
  const BoundarySpec& R = bc.right.at(s.grid.x_max());
  fill_ghosts_ns1(s, bc, p);

  std::vector<Vec6> flux(n + 1), minus(n + 1);
  parallel_for(-1, n, [&](int j) {
    detail::FaceResult<1> f;
    try {
      if (j == -1 && L.is_wall()) {
        f = detail::wall_face<1>(s.U(0) - h * s.Ux(0), s.U(0), s.Ux(0), L, c, dx, dt, true);
      } else if (j == n - 1 && R.is_wall()) {
        f = detail::wall_face<1>(s.U(n - 1) + h * s.Ux(n - 1), s.U(n - 1), s.Ux(n - 1), R, c, dx,
                                 dt, false);
      } else {
        f = detail::interior_face<1>(s.U(j) + h * s.Ux(j), s.U(j + 1) - h * s.Ux(j + 1), s.Ux(j),
                                     s.Ux(j + 1), nullptr, nullptr, c, dt);
      }
    } catch (const SolverError& e) {
      throw e.at({s.steps, j, std::nullopt});
    }
    flux[j + 1] = flux_ns1(f.mid, p);
    minus[j + 1] = f.minus;
  });

  const double r = dt / dx;
  const double k = 0.5 * dt / p.epsilon;
  parallel_for(0, n, [&](int j) {
    const Vec6 Un = s.U(j);
    Vec6 star = Un - r * (flux[j + 1] - flux[j]);
    try {
      const Vec3 fn = gas::euler_flux<1>(Un.head<3>(), c.gamma);
      const Vec3 fs = gas::euler_flux<1>(star.head<3>(), c.gamma);
      star.tail<3>() = (star.tail<3>() + k * (fn - Un.tail<3>()) + k * fs) / (1.0 + k);
    } catch (const SolverError& e) {
      throw e.at({s.steps, j, std::nullopt});
    }
    s.U(j) = star;
    s.Ux(j) = (minus[j + 1] - minus[j]) / dx;
  });
  s.t += dt;
  ++s.steps;
  check_gas_cells(s, c.gamma);
  fill_ghosts_ns1(s, bc, p);
  limit_slopes(s, limiter, c.gamma);
  fill_ghosts_ns1(s, bc, p);
}

double entropy_total(const GasState1D& s, double gamma) {
  double total = 0.0;
  for (int j = 0; j < s.grid.n_cells(); ++j) total += entropy_pair(s.U(j).head<3>(), gamma).eta;
  return total * s.grid.dx();
}

Vec3 conserved_totals(const GasState1D& s) {
  Vec3 t = Vec3::Zero();
  for (int j = 0; j < s.grid.n_cells(); ++j) t += s.U(j).head<3>();
  return t * s.grid.dx();
}

}  // namespace relaxflux
