#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "relaxflux/core/eigen_block.hpp"
#include "relaxflux/core/field.hpp"
#include "relaxflux/core/linalg.hpp"
#include "relaxflux/gas.hpp"

namespace relaxflux {

enum class BoundaryKind {
  Periodic,
  Symmetric,
  Extrapolation,
  Inflow,
  DirichletScalar,
  NeumannScalar,
  WallAdiabatic,
  WallIsothermal,
  MovingWall,
};

enum class Side { Left, Right, Bottom, Top };

const char* to_string(BoundaryKind kind);

struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::Extrapolation;

  // Scalar Dirichlet data u_b(t) and its time derivative.
  std::function<double(double)> u_b;
  std::function<double(double)> du_b;

  // Gas walls: tangential wall speed and wall temperature (isothermal and
  // moving walls); free-stream primitive state for inflow.
  double wall_speed = 0.0;
  double wall_temperature = 0.0;
  std::vector<double> inflow_primitive;

  static BoundarySpec of(BoundaryKind k) {
    BoundarySpec s;
    s.kind = k;
    return s;
  }
  static BoundarySpec periodic() { return of(BoundaryKind::Periodic); }
  static BoundarySpec symmetric() { return of(BoundaryKind::Symmetric); }
  static BoundarySpec extrapolation() { return of(BoundaryKind::Extrapolation); }
  static BoundarySpec inflow(std::vector<double> primitive);
  static BoundarySpec dirichlet(std::function<double(double)> u_b,
                                std::function<double(double)> du_b = {});
  static BoundarySpec neumann() { return of(BoundaryKind::NeumannScalar); }
  static BoundarySpec wall_adiabatic() { return of(BoundaryKind::WallAdiabatic); }
  static BoundarySpec wall_isothermal(double T_b);
  static BoundarySpec moving_wall(double speed, double T_b);

  bool is_wall() const noexcept {
    return kind == BoundaryKind::WallAdiabatic || kind == BoundaryKind::WallIsothermal ||
           kind == BoundaryKind::MovingWall;
  }
  bool is_scalar_kind() const noexcept {
    return kind == BoundaryKind::DirichletScalar || kind == BoundaryKind::NeumannScalar;
  }
  bool pins_face() const noexcept { return is_wall() || is_scalar_kind(); }
};

// Boundary conditions along one domain edge. Pieces are (start coordinate,
// spec); the piece with the largest start not exceeding the query applies.
class EdgeBoundary {
 public:
  EdgeBoundary() : pieces_{{-1e300, BoundarySpec{}}} {}
  EdgeBoundary(BoundarySpec spec) : pieces_{{-1e300, std::move(spec)}} {}  // NOLINT
  EdgeBoundary& then_from(double start, BoundarySpec spec);

  const BoundarySpec& at(double s) const;
  bool uniform() const noexcept { return pieces_.size() == 1; }
  const std::vector<std::pair<double, BoundarySpec>>& pieces() const { return pieces_; }

 private:
  std::vector<std::pair<double, BoundarySpec>> pieces_;
};

struct Boundary1D {
  EdgeBoundary left;
  EdgeBoundary right;

  static Boundary1D both(const BoundarySpec& s) { return {s, s}; }
  void validate_scalar() const;
  void validate_gas() const;
};

struct Boundary2D {
  EdgeBoundary left;
  EdgeBoundary right;
  EdgeBoundary bottom;
  EdgeBoundary top;

  static Boundary2D all(const BoundarySpec& s) { return {s, s, s, s}; }
  void validate_gas() const;
};

// ---------------------------------------------------------------------------
// Scalar boundary states (u, v) on the wall face.

// u = u_b, v = f(u_b) - mu phi(u_b) (u_0 - u_{-1}) / dx with u_{-1} = 2u_b - u_0.
// `outward` is -1 for a left wall and +1 for a right wall.
Vec2 scalar_dirichlet_state(double u_interior, double u_b, double mu, double dx, int outward,
                            const std::function<double(double)>& f,
                            const std::function<double(double)>& phi);

// u = u_0, v = f(u_0).
Vec2 scalar_neumann_state(double u_interior, const std::function<double(double)>& f);

// ---------------------------------------------------------------------------
// One-sided time derivative at a pinned face. `outgoing` is the convective
// derivative already carried by interior-side characteristics; the incoming
// characteristic amplitudes are chosen so that C * D = target. A singular
// constraint system leaves the incoming amplitudes at zero.
template <int n, int m>
Vec<2 * n> one_sided_derivative(const BlockWaves<n>& waves, const Vec<2 * n>& outgoing,
                                bool left_wall, const Eigen::Matrix<double, m, 2 * n>& C,
                                const Vec<m>& target) {
  static_assert(m == n, "one constraint per incoming characteristic");
  Eigen::Matrix<double, 2 * n, n> Rin;
  const double s = left_wall ? 1.0 : -1.0;
  Rin.template topRows<n>() = waves.V;
  Rin.template bottomRows<n>() = waves.V * (s * waves.sigma).asDiagonal();
  const Mat<n> A = C * Rin;
  const Vec<n> rhs = target - C * outgoing;
  Mat<n> Ainv;
  bool ok = false;
  double det = 0.0;
  A.computeInverseAndDetWithCheck(Ainv, det, ok, 0.0);
  const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
  if (!ok || std::abs(det) <= 1e-12 * std::pow(scale, n)) return outgoing;
  return outgoing + Rin * (Ainv * rhs);
}

// Pinned wall state for a gas (w_b, v_b) with the wall on the left
// (outward = -1) or right (outward = +1) of the interior cell, in the
// x-normal frame. `limit` is the interior reconstructed value at the face and
// `interior` the adjacent cell average.
template <int D>
Vec<2 * (D + 2)> gas_wall_state(const Vec<2 * (D + 2)>& limit, const Vec<2 * (D + 2)>& interior,
                                const BoundarySpec& spec, const gas::Consts& c, double dx,
                                int outward) {
  constexpr int n = D + 2;
  using WV = Vec<n>;
  const WV ql = gas::prim_from_cons<D>(limit.template head<n>(), c.gamma);
  const WV q0 = gas::prim_from_cons<D>(interior.template head<n>(), c.gamma);
  WV qb = ql;
  qb[1] = 0.0;
  if constexpr (D == 2) qb[2] = spec.kind == BoundaryKind::MovingWall ? spec.wall_speed : 0.0;
  if (spec.kind == BoundaryKind::WallIsothermal || spec.kind == BoundaryKind::MovingWall) {
    qb[D + 1] = spec.wall_temperature;
  }
  // One-sided gradient from the wall point to the interior cell centre.
  WV grad = (2.0 / dx) * (q0 - qb);
  if (outward > 0) grad = -grad;
  if (spec.kind == BoundaryKind::WallAdiabatic) grad[D + 1] = 0.0;
  const WV wb = gas::cons_from_prim<D>(qb, c.gamma);
  Vec<2 * n> out;
  out.template head<n>() = wb;
  out.template tail<n>() = gas::euler_flux<D>(wb, c.gamma) - gas::visc_xx<D>(qb, c) * grad;
  return out;
}

// Constraint rows for a gas wall: zero normal and tangential momentum
// change, zero change of the normal mass-flux variable, and either zero
// change of the energy-flux variable (adiabatic) or of the temperature.
template <int D>
std::pair<Eigen::Matrix<double, D + 2, 2 * (D + 2)>, Vec<D + 2>> gas_wall_constraints(
    const Vec<D + 2>& wb, const BoundarySpec& spec, double gamma) {
  constexpr int n = D + 2;
  Eigen::Matrix<double, n, 2 * n> C = Eigen::Matrix<double, n, 2 * n>::Zero();
  int r = 0;
  for (int k = 1; k <= D; ++k) C(r++, k) = 1.0;
  C(r++, n) = 1.0;
  if (spec.kind == BoundaryKind::WallAdiabatic) {
    C(r, n + D + 1) = 1.0;
  } else {
    const Vec<n> q = gas::prim_from_cons<D>(wb, gamma);
    const Mat<n> J = gas::dprim_dcons<D>(q, gamma);
    C.row(r).template head<n>() = J.row(D + 1);
  }
  return {C, Vec<n>::Zero()};
}

// ---------------------------------------------------------------------------
// Ghost filling. Slopes are stored alongside the state; see each solver.

// Parity (+1/-1) of a 1-D gas component (w, v) under x-reflection.
double gas1d_parity(int component);
// Parity of a 2-D component of U = (w, v_X, v_Y) under reflection of the
// given axis (0 = x, 1 = y).
double gas2d_parity(int component, int axis);

}  // namespace relaxflux
