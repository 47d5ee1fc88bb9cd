#pragma once

#include <cmath>
#include <string>

#include "relaxflux/core/eigen_block.hpp"
#include "relaxflux/core/error.hpp"
#include "relaxflux/core/linalg.hpp"
#include "relaxflux/core/params.hpp"

// Gas-dynamics building blocks shared by the 1-D and 2-D relaxation solvers.
// Everything is written for the x-normal direction; D is the number of space
// dimensions, so w = (rho, m_1..m_D, E) has D + 2 components. The y-direction
// of the 2-D solver reuses these functions through mirror_y().

namespace relaxflux::gas {

template <int D>
inline constexpr int nw = D + 2;

template <int D>
using W = Vec<D + 2>;

template <int D>
using Block = Mat<D + 2>;

// Cached constants used in the inner loops.
struct Consts {
  double gamma, mu, kappa, eps, a2;
  explicit Consts(const RelaxParams& p)
      : gamma(p.g()), mu(p.mu), kappa(p.kappa()), eps(p.epsilon), a2(p.a * p.a) {}
};

[[noreturn]] inline void nonphysical(const std::string& what) {
  throw SolverError(ErrorKind::NonPhysicalState, what);
}

// Primitive state (rho, u_1..u_D, T) with T = p / rho.
template <int D>
W<D> prim_from_cons(const W<D>& w, double gamma) {
  const double rho = w[0];
  if (!(rho > 0.0) || !std::isfinite(rho)) nonphysical("density is not positive");
  W<D> q;
  q[0] = rho;
  double ke = 0.0;
  for (int k = 1; k <= D; ++k) {
    q[k] = w[k] / rho;
    ke += q[k] * q[k];
  }
  const double T = (gamma - 1.0) * (w[D + 1] / rho - 0.5 * ke);
  if (!(T > 0.0) || !std::isfinite(T)) nonphysical("pressure is not positive");
  q[D + 1] = T;
  return q;
}

template <int D>
W<D> cons_from_prim(const W<D>& q, double gamma) {
  const double rho = q[0], T = q[D + 1];
  if (!(rho > 0.0) || !(T > 0.0)) nonphysical("primitive state has non-positive density or temperature");
  W<D> w;
  w[0] = rho;
  double ke = 0.0;
  for (int k = 1; k <= D; ++k) {
    w[k] = rho * q[k];
    ke += q[k] * q[k];
  }
  w[D + 1] = rho * (T / (gamma - 1.0) + 0.5 * ke);
  return w;
}

template <int D>
double pressure(const W<D>& w, double gamma) {
  const W<D> q = prim_from_cons<D>(w, gamma);
  return q[0] * q[D + 1];
}

// Euler flux in x.
template <int D>
W<D> euler_flux(const W<D>& w, double gamma) {
  const W<D> q = prim_from_cons<D>(w, gamma);
  const double u = q[1], p = q[0] * q[D + 1];
  W<D> f = u * w;
  f[1] += p;
  f[D + 1] += p * u;
  return f;
}

// Relaxation flux of the x-relaxation variable in x:
// a^2 w + (1/eps)(0, 4mu/3 u_X, mu u_Y, kappa T + mu/2 (4/3 u_X^2 + u_Y^2)).
template <int D>
W<D> relax_flux(const W<D>& w, const Consts& c) {
  const W<D> q = prim_from_cons<D>(w, c.gamma);
  W<D> out = c.a2 * w;
  const double s = 1.0 / c.eps;
  out[1] += s * (4.0 / 3.0) * c.mu * q[1];
  double visc = (2.0 / 3.0) * c.mu * q[1] * q[1];
  if constexpr (D == 2) {
    out[2] += s * c.mu * q[2];
    visc += 0.5 * c.mu * q[2] * q[2];
  }
  out[D + 1] += s * (c.kappa * q[D + 1] + visc);
  return out;
}

// x-flux of the y-relaxation variable: (1/eps)(0, mu u_Y, -2mu/3 u_X, 0).
inline Vec4 cross_flux(const Vec4& w, const Consts& c) {
  const Vec4 q = prim_from_cons<2>(w, c.gamma);
  const double s = c.mu / c.eps;
  return Vec4(0.0, s * q[2], -(2.0 / 3.0) * s * q[1], 0.0);
}

// d(w~)/dw.
template <int D>
Block<D> dprim_dcons(const W<D>& q, double gamma) {
  const double rho = q[0], ir = 1.0 / rho;
  Block<D> J = Block<D>::Zero();
  J(0, 0) = 1.0;
  double ke = 0.0;
  for (int k = 1; k <= D; ++k) {
    J(k, 0) = -q[k] * ir;
    J(k, k) = ir;
    ke += q[k] * q[k];
  }
  const double gm1 = gamma - 1.0;
  const double E = q[D + 1] / gm1 + 0.5 * ke;
  J(D + 1, 0) = gm1 * ir * (ke - E);
  for (int k = 1; k <= D; ++k) J(D + 1, k) = -gm1 * q[k] * ir;
  J(D + 1, D + 1) = gm1 * ir;
  return J;
}

// Viscous matrix in primitive variables for the xx coupling, B~_XX(w~).
// `u` carries the velocities used in the energy row.
template <int D>
Block<D> visc_xx(const W<D>& q, const Consts& c) {
  Block<D> B = Block<D>::Zero();
  B(1, 1) = (4.0 / 3.0) * c.mu;
  B(D + 1, 1) = (4.0 / 3.0) * c.mu * q[1];
  if constexpr (D == 2) {
    B(2, 2) = c.mu;
    B(3, 2) = c.mu * q[2];
  }
  B(D + 1, D + 1) = c.kappa;
  return B;
}

// B~_XY(w~), the coupling of the x-relaxation variable to y-gradients.
inline Mat4 visc_xy(const Vec4& q, const Consts& c) {
  Mat4 B = Mat4::Zero();
  B(1, 2) = -(2.0 / 3.0) * c.mu;
  B(2, 1) = c.mu;
  B(3, 1) = c.mu * q[2];
  B(3, 2) = -(2.0 / 3.0) * c.mu * q[1];
  return B;
}

// Frozen Jacobian block K = d(relax_flux)/dw = a^2 I + B~_XX dw~/dw / eps.
template <int D>
Block<D> jacobian_block(const W<D>& w, const Consts& c) {
  const W<D> q = prim_from_cons<D>(w, c.gamma);
  Block<D> K = (visc_xx<D>(q, c) * dprim_dcons<D>(q, c.gamma)) / c.eps;
  K.diagonal().array() += c.a2;
  return K;
}

// Tangential coupling block (1/eps) B~_XY dw~/dw, for the 2-D GRP source.
inline Mat4 tangential_block(const Vec4& w, const Consts& c) {
  const Vec4 q = prim_from_cons<2>(w, c.gamma);
  return (visc_xy(q, c) * dprim_dcons<2>(q, c.gamma)) / c.eps;
}

// Roe block with arithmetic means: K~ = a^2 I + B~* P^-1 / eps, which gives
// relax_flux(wr) - relax_flux(wl) = K~ (wr - wl) exactly.
template <int D>
Block<D> roe_block(const W<D>& wl, const W<D>& wr, const Consts& c) {
  const W<D> ql = prim_from_cons<D>(wl, c.gamma);
  const W<D> qr = prim_from_cons<D>(wr, c.gamma);
  const W<D> qm = 0.5 * (ql + qr);
  const double rho = qm[0];
  const double Ebar = 0.5 * (wl[D + 1] / wl[0] + wr[D + 1] / wr[0]);
  Block<D> P = Block<D>::Zero();
  P(0, 0) = 1.0;
  for (int k = 1; k <= D; ++k) {
    P(k, 0) = qm[k];
    P(k, k) = rho;
    P(D + 1, k) = rho * qm[k];
  }
  P(D + 1, 0) = Ebar;
  P(D + 1, D + 1) = rho / (c.gamma - 1.0);
  const Block<D> B = visc_xx<D>(qm, c) / c.eps;
  // K P = B, column by column from the right.
  Block<D> K;
  for (int col = D + 1; col >= 0; --col) {
    W<D> x = B.col(col);
    for (int k = col + 1; k <= D + 1; ++k) x -= K.col(k) * P(k, col);
    K.col(col) = x / P(col, col);
  }
  K.diagonal().array() += c.a2;
  return K;
}

// h_vX energy row: (mu/eps)(u_Y d_y u_X - 2/3 u_X d_y u_Y).
inline double mixed_energy(const Vec4& q, const Vec4& dq_tangential, const Consts& c) {
  return (c.mu / c.eps) * (q[2] * dq_tangential[1] - (2.0 / 3.0) * q[1] * dq_tangential[2]);
}

// Mirror map exchanging the roles of x and y on a 4-vector (rho, m_X, m_Y, E).
inline Vec4 mirror_y(const Vec4& w) { return Vec4(w[0], w[2], w[1], w[3]); }

// Mathematical entropy density eta = -rho S, S = ln(T rho^(1-gamma)) / (gamma - 1).
template <int D>
double entropy_density(const W<D>& w, double gamma) {
  const W<D> q = prim_from_cons<D>(w, gamma);
  const double S = std::log(q[D + 1] * std::pow(q[0], 1.0 - gamma)) / (gamma - 1.0);
  return -q[0] * S;
}

}  // namespace relaxflux::gas
