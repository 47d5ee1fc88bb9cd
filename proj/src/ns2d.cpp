#include "relaxflux/ns2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "relaxflux/core/parallel.hpp"
#include "relaxflux/detail/gas_face.hpp"
#include "relaxflux/gas.hpp"

namespace relaxflux {

using gas::mirror_y;

namespace {

Vec8 mirror8(const Vec8& x) {
  Vec8 out;
  out << x[0], x[2], x[1], x[3], x[4], x[6], x[5], x[7];
  return out;
}

Vec8 x_part(const Vec12& U) { return U.head<8>(); }
Vec8 y_part(const Vec12& U) {
  Vec8 out;
  out << U.head<4>(), U.tail<4>();
  return out;
}

Vec4 relax_flux_y(const Vec4& w, const gas::Consts& c) {
  return mirror_y(gas::relax_flux<2>(mirror_y(w), c));
}
Vec4 cross_flux_y(const Vec4& w, const gas::Consts& c) {
  return mirror_y(gas::cross_flux(mirror_y(w), c));
}

Vec12 x_flux(const Vec8& mid, const gas::Consts& c) {
  const Vec4 w = mid.head<4>();
  Vec12 F;
  F << mid.tail<4>(), gas::relax_flux<2>(w, c), gas::cross_flux(w, c);
  return F;
}

Vec12 y_flux(const Vec8& mid, const gas::Consts& c) {
  const Vec4 w = mid.head<4>();
  Vec12 G;
  G << mid.tail<4>(), cross_flux_y(w, c), relax_flux_y(w, c);
  return G;
}

// Equilibrium (v_X, v_Y) for w with primitive gradients gx, gy.
std::pair<Vec4, Vec4> equilibrium(const Vec4& w, const Vec4& gx, const Vec4& gy, const gas::Consts& c) {
  const Vec4 q = gas::prim_from_cons<2>(w, c.gamma);
  const Vec4 vx = gas::euler_flux<2>(w, c.gamma) - gas::visc_xx<2>(q, c) * gx - gas::visc_xy(q, c) * gy;
  const Vec4 qm = mirror_y(q);
  const Vec4 vy = mirror_y(gas::euler_flux<2>(mirror_y(w), c.gamma) - gas::visc_xx<2>(qm, c) * mirror_y(gy) -
                          gas::visc_xy(qm, c) * mirror_y(gx));
  return {vx, vy};
}

// Ghost cells along one edge. `axis` is 0 for left/right, 1 for bottom/top.
void fill_edge(GasState2D& s, const EdgeBoundary& edge, bool low, int axis, const gas::Consts& c) {
  const int nx = s.grid.nx(), ny = s.grid.ny();
  const int n_norm = axis == 0 ? nx : ny;
  const int n_tan = axis == 0 ? ny : nx;
  const Grid1D& tan_grid = axis == 0 ? s.grid.y : s.grid.x;
  for (int t = 0; t < n_tan; ++t) {
    const BoundarySpec& spec = edge.at(tan_grid.center(t));
    for (int k = 1; k <= kGhost; ++k) {
      const int g = low ? -k : n_norm - 1 + k;
      const int mirror = low ? k - 1 : n_norm - k;
      const int wrap = low ? n_norm - k : k - 1;
      const int e = low ? 0 : n_norm - 1;
      auto at = [&](int nn) { return axis == 0 ? std::pair{nn, t} : std::pair{t, nn}; };
      const auto [gi, gj] = at(g);
      auto copy_from = [&](int nn, bool keep_slopes) {
        const auto [si, sj] = at(nn);
        s.U(gi, gj) = s.U(si, sj);
        s.Sx(gi, gj) = keep_slopes ? s.Sx(si, sj) : Vec8::Zero();
        s.Sy(gi, gj) = keep_slopes ? s.Sy(si, sj) : Vec8::Zero();
      };
      switch (spec.kind) {
        case BoundaryKind::Periodic: copy_from(wrap, true); break;
        case BoundaryKind::Symmetric:
        case BoundaryKind::WallAdiabatic:
        case BoundaryKind::WallIsothermal:
        case BoundaryKind::MovingWall: {
          const auto [si, sj] = at(mirror);
          for (int m = 0; m < 12; ++m) s.U(gi, gj)[m] = gas2d_parity(m, axis) * s.U(si, sj)[m];
          for (int m = 0; m < 8; ++m) {
            const double px = gas2d_parity(m, axis);
            const double py = gas2d_parity(m < 4 ? m : m + 4, axis);
            s.Sx(gi, gj)[m] = (axis == 0 ? -px : px) * s.Sx(si, sj)[m];
            s.Sy(gi, gj)[m] = (axis == 1 ? -py : py) * s.Sy(si, sj)[m];
          }
          break;
        }
        case BoundaryKind::Inflow: {
          const auto& pr = spec.inflow_primitive;
          const Vec4 w = gas::cons_from_prim<2>(Vec4(pr[0], pr[1], pr[2], pr[3] / pr[0]), c.gamma);
          const auto [vx, vy] = equilibrium(w, Vec4::Zero(), Vec4::Zero(), c);
          s.U(gi, gj) << w, vx, vy;
          s.Sx(gi, gj).setZero();
          s.Sy(gi, gj).setZero();
          break;
        }
        default: copy_from(e, false); break;
      }
    }
  }
}

void limit_slopes(GasState2D& s, const Limiter& limiter, double gamma) {
  const int nx = s.grid.nx(), ny = s.grid.ny();
  const double dx = s.grid.dx(), dy = s.grid.dy();
  if (!limiter.enabled) {
    parallel_for(0, ny, [&](int j) {
      for (int i = 0; i < nx; ++i) {
        detail::enforce_admissible_slope<2>(x_part(s.U(i, j)), s.Sx(i, j), 0.5 * dx, gamma);
        detail::enforce_admissible_slope<2>(y_part(s.U(i, j)), s.Sy(i, j), 0.5 * dy, gamma);
      }
    });
    return;
  }
  Field2D<Vec8> lx(nx, ny), ly(nx, ny);
  parallel_for(0, ny, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      const Vec8 c0 = x_part(s.U(i, j));
      const Vec8 fx = limiter.alpha * (x_part(s.U(i + 1, j)) - c0) / dx;
      const Vec8 bx = limiter.alpha * (c0 - x_part(s.U(i - 1, j))) / dx;
      const Vec8 c1 = y_part(s.U(i, j));
      const Vec8 fy = limiter.alpha * (y_part(s.U(i, j + 1)) - c1) / dy;
      const Vec8 by = limiter.alpha * (c1 - y_part(s.U(i, j - 1))) / dy;
      for (int k = 0; k < 8; ++k) {
        lx(i, j)[k] = minmod3(fx[k], s.Sx(i, j)[k], bx[k]);
        ly(i, j)[k] = minmod3(fy[k], s.Sy(i, j)[k], by[k]);
      }
      detail::enforce_admissible_slope<2>(c0, lx(i, j), 0.5 * dx, gamma);
      detail::enforce_admissible_slope<2>(c1, ly(i, j), 0.5 * dy, gamma);
    }
  });
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      s.Sx(i, j) = lx(i, j);
      s.Sy(i, j) = ly(i, j);
    }
}

void central_slopes(GasState2D& s, const Boundary2D& bc, const RelaxParams& p, const Limiter& limiter) {
  fill_ghosts_ns2(s, bc, p);
  const int nx = s.grid.nx(), ny = s.grid.ny();
  const double ix = 0.5 / s.grid.dx(), iy = 0.5 / s.grid.dy();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      s.Sx(i, j) = ix * (x_part(s.U(i + 1, j)) - x_part(s.U(i - 1, j)));
      s.Sy(i, j) = iy * (y_part(s.U(i, j + 1)) - y_part(s.U(i, j - 1)));
    }
  fill_ghosts_ns2(s, bc, p);
  limit_slopes(s, limiter, p.g());
  fill_ghosts_ns2(s, bc, p);
}

struct FaceOut {
  Vec12 flux;
  Vec4 wmid;
  Vec8 minus;
  double speed;
};

}  // namespace

ViscousBlocks2D viscous_blocks_2d(const Vec4& q, const RelaxParams& p) {
  const gas::Consts c(p);
  const Vec4 qm = mirror_y(q);
  Mat4 S;
  S << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
  return {gas::visc_xx<2>(q, c), gas::visc_xy(q, c), S * gas::visc_xy(qm, c) * S,
          S * gas::visc_xx<2>(qm, c) * S};
}

Vec12 flux_x_2d(const Vec12& U, const RelaxParams& p) { return x_flux(x_part(U), gas::Consts(p)); }

Vec12 flux_y_2d(const Vec12& U, const RelaxParams& p) { return y_flux(y_part(U), gas::Consts(p)); }

Vec4 euler_flux_x_2d(const Vec4& w, double gamma) { return gas::euler_flux<2>(w, gamma); }
Vec4 euler_flux_y_2d(const Vec4& w, double gamma) {
  return mirror_y(gas::euler_flux<2>(mirror_y(w), gamma));
}

Vec12 mixed_source_h(const Vec4& q, const Vec4& grad, int axis, const RelaxParams& p) {
  const gas::Consts c(p);
  Vec12 h = Vec12::Zero();
  if (axis == 1) h[7] = gas::mixed_energy(q, grad, c);
  else h[11] = gas::mixed_energy(mirror_y(q), mirror_y(grad), c);
  return h;
}

Vec8 tangential_operator(const Vec4& w, const Vec8& t, const RelaxParams& p) {
  const Mat4 KT = gas::tangential_block(w, gas::Consts(p));
  Vec8 r;
  r << t.tail<4>(), KT * t.head<4>();
  return r;
}

QuasiGrpResult quasi1d_grp_x(const Vec8& Ul, const Vec8& Ur, const Vec8& sl, const Vec8& sr,
                             const Vec8& tl, const Vec8& tr, const RelaxParams& p, double dt) {
  const gas::Consts c(p);
  const auto f = detail::interior_face<2>(Ul, Ur, sl, sr, &tl, &tr, c, dt);
  return {detail::roe_state<2>(Ul, Ur, c), f.mid, f.minus, f.speed};
}

void fill_ghosts_ns2(GasState2D& s, const Boundary2D& bc, const RelaxParams& p) {
  const gas::Consts c(p);
  fill_edge(s, bc.left, true, 0, c);
  fill_edge(s, bc.right, false, 0, c);
  fill_edge(s, bc.bottom, true, 1, c);
  fill_edge(s, bc.top, false, 1, c);
}

void equilibrate_2d(GasState2D& s, const RelaxParams& p, const Boundary2D& bc, const Limiter& limiter) {
  const gas::Consts c(p);
  const int nx = s.grid.nx(), ny = s.grid.ny();
  const double dx = s.grid.dx(), dy = s.grid.dy();
  Field2D<Vec4> q(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) q(i, j) = gas::prim_from_cons<2>(s.U(i, j).head<4>(), c.gamma);
  auto diff = [](auto get, int k, int n, double h) -> Vec4 {
    if (n < 2) return Vec4::Zero();
    if (k == 0) return (get(1) - get(0)) / h;
    if (k == n - 1) return (get(n - 1) - get(n - 2)) / h;
    return (get(k + 1) - get(k - 1)) / (2.0 * h);
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Vec4 gx = diff([&](int k) { return q(k, j); }, i, nx, dx);
      const Vec4 gy = diff([&](int k) { return q(i, k); }, j, ny, dy);
      const Vec4 w = s.U(i, j).head<4>();
      const auto [vx, vy] = equilibrium(w, gx, gy, c);
      s.U(i, j) << w, vx, vy;
    }
  central_slopes(s, bc, p, limiter);
}

GasState2D make_gas_state_2d(const Grid2D& grid, const std::function<Vec4(double, double)>& prim,
                             const RelaxParams& p, const Boundary2D& bc, const Limiter& limiter) {
  p.validate();
  if (!p.is_gas()) throw SolverError(ErrorKind::InvalidArgument, "gas solver needs gamma and Prandtl number");
  bc.validate_gas();
  GasState2D s(grid);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const Vec4 r = prim(grid.x.center(i), grid.y.center(j));
      s.U(i, j).head<4>() = gas::cons_from_prim<2>(Vec4(r[0], r[1], r[2], r[3] / r[0]), p.g());
    }
  equilibrate_2d(s, p, bc, limiter);
  return s;
}

WaveSpeeds2D max_wave_speed_ns2(const GasState2D& s, const RelaxParams& p) {
  const gas::Consts c(p);
  double rho_min = 1e300;
  for (int j = 0; j < s.grid.ny(); ++j)
    for (int i = 0; i < s.grid.nx(); ++i) rho_min = std::min(rho_min, s.U(i, j)[0]);
  if (!(rho_min > 0.0)) throw SolverError(ErrorKind::NonPhysicalState, "density is not positive");
  const double v = detail::block_speed(rho_min, c, 2);
  return {v, v};
}

void check_gas_cells(const GasState2D& s, double gamma) {
  for (int j = 0; j < s.grid.ny(); ++j)
    for (int i = 0; i < s.grid.nx(); ++i) {
      const Vec12& U = s.U(i, j);
      if (!U.allFinite()) {
        throw SolverError(ErrorKind::NonFiniteState, "non-finite gas state", {s.steps, i, j});
      }
      try {
        gas::prim_from_cons<2>(U.head<4>(), gamma);
      } catch (const SolverError& e) {
        throw e.at({s.steps, i, j});
      }
    }
}

void step_ns2(GasState2D& s, const RelaxParams& p, double dt, const Boundary2D& bc,
              const Limiter& limiter, const Forcing2D& forcing) {
  const gas::Consts c(p);
  const int nx = s.grid.nx(), ny = s.grid.ny();
  const double dx = s.grid.dx(), dy = s.grid.dy();
  const double hx = 0.5 * dx, hy = 0.5 * dy;
  fill_ghosts_ns2(s, bc, p);

  const int sx = nx + 1;
  std::vector<FaceOut> fx(static_cast<size_t>(sx) * ny), fy(static_cast<size_t>(nx) * (ny + 1));

  parallel_for(0, ny, [&](int j) {
    const double yc = s.grid.y.center(j);
    const BoundarySpec& L = bc.left.at(yc);
    const BoundarySpec& R = bc.right.at(yc);
    for (int i = -1; i < nx; ++i) {
      detail::FaceResult<2> f;
      try {
        if (i == -1 && L.is_wall()) {
          const Vec8 U0 = x_part(s.U(0, j));
          f = detail::wall_face<2>(U0 - hx * s.Sx(0, j), U0, s.Sx(0, j), L, c, dx, dt, true);
        } else if (i == nx - 1 && R.is_wall()) {
          const Vec8 U0 = x_part(s.U(nx - 1, j));
          f = detail::wall_face<2>(U0 + hx * s.Sx(nx - 1, j), U0, s.Sx(nx - 1, j), R, c, dx, dt, false);
        } else {
          f = detail::interior_face<2>(x_part(s.U(i, j)) + hx * s.Sx(i, j),
                                       x_part(s.U(i + 1, j)) - hx * s.Sx(i + 1, j), s.Sx(i, j),
                                       s.Sx(i + 1, j), &s.Sy(i, j), &s.Sy(i + 1, j), c, dt);
        }
      } catch (const SolverError& e) {
        throw e.at({s.steps, i, j});
      }
      fx[(i + 1) + static_cast<size_t>(j) * sx] = {x_flux(f.mid, c), f.mid.head<4>(), f.minus, f.speed};
    }
  });

  parallel_for(0, nx, [&](int i) {
    const double xc = s.grid.x.center(i);
    const BoundarySpec& B = bc.bottom.at(xc);
    const BoundarySpec& T = bc.top.at(xc);
    for (int j = -1; j < ny; ++j) {
      detail::FaceResult<2> f;
      try {
        if (j == -1 && B.is_wall()) {
          const Vec8 U0 = y_part(s.U(i, 0));
          f = detail::wall_face<2>(mirror8(U0 - hy * s.Sy(i, 0)), mirror8(U0), mirror8(s.Sy(i, 0)), B,
                                   c, dy, dt, true);
        } else if (j == ny - 1 && T.is_wall()) {
          const Vec8 U0 = y_part(s.U(i, ny - 1));
          f = detail::wall_face<2>(mirror8(U0 + hy * s.Sy(i, ny - 1)), mirror8(U0),
                                   mirror8(s.Sy(i, ny - 1)), T, c, dy, dt, false);
        } else {
          const Vec8 tl = mirror8(s.Sx(i, j)), tr = mirror8(s.Sx(i, j + 1));
          f = detail::interior_face<2>(mirror8(y_part(s.U(i, j)) + hy * s.Sy(i, j)),
                                       mirror8(y_part(s.U(i, j + 1)) - hy * s.Sy(i, j + 1)),
                                       mirror8(s.Sy(i, j)), mirror8(s.Sy(i, j + 1)), &tl, &tr, c, dt);
        }
      } catch (const SolverError& e) {
        throw e.at({s.steps, i, j});
      }
      const Vec8 mid = mirror8(f.mid);
      fy[i + static_cast<size_t>(j + 1) * nx] = {y_flux(mid, c), mid.head<4>(), mirror8(f.minus), f.speed};
    }
  });

  double courant = 0.0;
  for (const auto& f : fx) courant = std::max(courant, f.speed * dt / dx);
  for (const auto& f : fy) courant = std::max(courant, f.speed * dt / dy);
  if (courant > 1.05) {
    throw SolverError(ErrorKind::CFLViolation,
                      "Courant number " + std::to_string(courant) + " exceeds the stable limit",
                      {s.steps, std::nullopt, std::nullopt});
  }

  const double rx = dt / dx, ry = dt / dy;
  const double k = 0.5 * dt / p.epsilon;
  const double t_mid = s.t + 0.5 * dt;
  parallel_for(0, ny, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      const FaceOut& xl = fx[i + static_cast<size_t>(j) * sx];
      const FaceOut& xr = fx[(i + 1) + static_cast<size_t>(j) * sx];
      const FaceOut& yb = fy[i + static_cast<size_t>(j) * nx];
      const FaceOut& yt = fy[i + static_cast<size_t>(j + 1) * nx];
      const Vec12 Un = s.U(i, j);
      Vec12 star = Un - rx * (xr.flux - xl.flux) - ry * (yt.flux - yb.flux);
      try {
        const Vec4 qb = gas::prim_from_cons<2>(yb.wmid, c.gamma);
        const Vec4 qt = gas::prim_from_cons<2>(yt.wmid, c.gamma);
        star[7] -= dt * gas::mixed_energy(0.5 * (qb + qt), (qt - qb) / dy, c);
        const Vec4 ql = gas::prim_from_cons<2>(xl.wmid, c.gamma);
        const Vec4 qr = gas::prim_from_cons<2>(xr.wmid, c.gamma);
        star[11] -= dt * gas::mixed_energy(mirror_y(0.5 * (ql + qr)), mirror_y((qr - ql) / dx), c);
        if (forcing) star.head<4>() += dt * forcing(s.grid.x.center(i), s.grid.y.center(j), t_mid);
        const Vec4 wn = Un.head<4>(), ws = star.head<4>();
        const Vec4 fxn = gas::euler_flux<2>(wn, c.gamma), fxs = gas::euler_flux<2>(ws, c.gamma);
        const Vec4 fyn = euler_flux_y_2d(wn, c.gamma), fys = euler_flux_y_2d(ws, c.gamma);
        star.segment<4>(4) = (star.segment<4>(4) + k * (fxn - Un.segment<4>(4)) + k * fxs) / (1.0 + k);
        star.segment<4>(8) = (star.segment<4>(8) + k * (fyn - Un.segment<4>(8)) + k * fys) / (1.0 + k);
      } catch (const SolverError& e) {
        throw e.at({s.steps, i, j});
      }
      s.U(i, j) = star;
      s.Sx(i, j) = (xr.minus - xl.minus) / dx;
      s.Sy(i, j) = (yt.minus - yb.minus) / dy;
    }
  });
  s.t += dt;
  ++s.steps;
  check_gas_cells(s, c.gamma);
  fill_ghosts_ns2(s, bc, p);
  limit_slopes(s, limiter, c.gamma);
  fill_ghosts_ns2(s, bc, p);
}

Vec4 conserved_totals(const GasState2D& s) {
  Vec4 t = Vec4::Zero();
  for (int j = 0; j < s.grid.ny(); ++j)
    for (int i = 0; i < s.grid.nx(); ++i) t += s.U(i, j).head<4>();
  return t * s.grid.cell_area();
}

}  // namespace relaxflux
