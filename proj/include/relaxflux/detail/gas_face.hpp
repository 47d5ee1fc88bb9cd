#pragma once

#include <algorithm>

#include "relaxflux/boundary.hpp"
#include "relaxflux/core/eigen_block.hpp"
#include "relaxflux/gas.hpp"

// Interface kernel of the IMEX-GRP scheme for the gas relaxation systems,
// written in the x-normal frame. U = (w, v) has 2n components, n = D + 2.

namespace relaxflux::detail {

template <int D>
struct FaceResult {
  static constexpr int n = D + 2;
  Vec<2 * n> mid;    // U^{n+1/2} on the face
  Vec<2 * n> minus;  // U^{n+1,-} used for the slope update
  double speed;      // spectral radius seen by this face
};

// U* + tau (D + H(U_new)) with the source implicit and linear in v.
template <int D>
Vec<2 * (D + 2)> advance(const Vec<2 * (D + 2)>& star, const Vec<2 * (D + 2)>& Dt, double tau,
                         const gas::Consts& c) {
  constexpr int n = D + 2;
  Vec<2 * n> out;
  out.template head<n>() = star.template head<n>() + tau * Dt.template head<n>();
  const double k = tau / c.eps;
  const Vec<n> f = gas::euler_flux<D>(out.template head<n>(), c.gamma);
  out.template tail<n>() =
      (star.template tail<n>() + tau * Dt.template tail<n>() + k * f) / (1.0 + k);
  return out;
}

// Roe-type Riemann state: (Ul+Ur)/2 - R sign(Lambda) R^-1 (Ur-Ul) / 2.
template <int D>
Vec<2 * (D + 2)> roe_state(const Vec<2 * (D + 2)>& Ul, const Vec<2 * (D + 2)>& Ur,
                           const gas::Consts& c, double* speed = nullptr) {
  constexpr int n = D + 2;
  const BlockWaves<n> w =
      block_waves<n>(gas::roe_block<D>(Ul.template head<n>(), Ur.template head<n>(), c));
  if (speed) *speed = w.spectral_radius();
  return 0.5 * (Ul + Ur) - 0.5 * w.apply_sign(Ur - Ul);
}

// Interior face. SL, SR are the normal slopes of the two cells; TL, TR (2-D
// only, may be null) the tangential slopes (d_t w, d_t v_t) of the two cells.
template <int D>
FaceResult<D> interior_face(const Vec<2 * (D + 2)>& Ul, const Vec<2 * (D + 2)>& Ur,
                            const Vec<2 * (D + 2)>& SL, const Vec<2 * (D + 2)>& SR,
                            const Vec<2 * (D + 2)>* TL, const Vec<2 * (D + 2)>* TR,
                            const gas::Consts& c, double dt) {
  constexpr int n = D + 2;
  double roe_speed = 0.0;
  const Vec<2 * n> star = roe_state<D>(Ul, Ur, c, &roe_speed);
  const Vec<n> ws = star.template head<n>();
  const BlockWaves<n> w = block_waves<n>(gas::jacobian_block<D>(ws, c));
  // D = -R (Lambda+ c+(SL) + I+ c+(M^Y TL)) - R (Lambda- c-(SR) + I- c-(M^Y TR)).
  Vec<n> ap, am, cp, cm;
  w.split(SL, ap, cm);
  ap = w.sigma.cwiseProduct(ap);
  w.split(SR, cp, am);
  am = -w.sigma.cwiseProduct(am);
  if constexpr (D == 2) {
    if (TL && TR) {
      const Mat4 KT = gas::tangential_block(ws, c);
      auto my = [&](const Vec<8>& T) {
        Vec<8> r;
        r.head<4>() = T.tail<4>();
        r.tail<4>() = KT * T.head<4>();
        return r;
      };
      w.split(my(*TL), cp, cm);
      ap += cp;
      w.split(my(*TR), cp, cm);
      am += cm;
    }
  }
  const Vec<2 * n> Dt = -w.combine(ap, am);
  return {advance<D>(star, Dt, 0.5 * dt, c), advance<D>(star, Dt, dt, c),
          std::max(roe_speed, w.spectral_radius())};
}

// Wall face: the boundary state is pinned and the incoming characteristics
// are fixed by the wall constraints. `S` is the normal slope of the interior
// cell; `left_wall` says the interior lies on the +x side of the face.
template <int D>
FaceResult<D> wall_face(const Vec<2 * (D + 2)>& limit, const Vec<2 * (D + 2)>& interior,
                        const Vec<2 * (D + 2)>& S, const BoundarySpec& spec, const gas::Consts& c,
                        double dx, double dt, bool left_wall) {
  constexpr int n = D + 2;
  const Vec<2 * n> star = gas_wall_state<D>(limit, interior, spec, c, dx, left_wall ? -1 : 1);
  const Vec<n> wb = star.template head<n>();
  const BlockWaves<n> w = block_waves<n>(gas::jacobian_block<D>(wb, c));
  const Vec<2 * n> out = left_wall ? Vec<2 * n>(-w.apply_lambda_minus(S))
                                   : Vec<2 * n>(-w.apply_lambda_plus(S));
  const auto [C, target] = gas_wall_constraints<D>(wb, spec, c.gamma);
  const Vec<2 * n> Dt = one_sided_derivative<n, n>(w, out, left_wall, C, target);
  return {advance<D>(star, Dt, 0.5 * dt, c), advance<D>(star, Dt, dt, c), w.spectral_radius()};
}

template <int D>
bool admissible(const Vec<D + 2>& w, double gamma) {
  if (!(w[0] > 0.0)) return false;
  double ke = 0.0;
  for (int k = 1; k <= D; ++k) ke += w[k] * w[k];
  return (gamma - 1.0) * (w[D + 1] - 0.5 * ke / w[0]) > 0.0;
}

// Halves the slope S of cell value U until both face limits U +- h S have
// positive density and pressure; zero after ten halvings. Returns true if
// the slope was changed.
template <int D>
bool enforce_admissible_slope(const Vec<2 * (D + 2)>& U, Vec<2 * (D + 2)>& S, double h, double gamma) {
  constexpr int n = D + 2;
  for (int k = 0; k <= 10; ++k) {
    const Vec<n> w = U.template head<n>(), d = h * S.template head<n>();
    if (admissible<D>(w + d, gamma) && admissible<D>(w - d, gamma)) return k > 0;
    S *= k < 10 ? 0.5 : 0.0;
  }
  return true;
}

// Largest block eigenvalue a^2 + max(4mu/3, mu, kappa (gamma-1)) / (eps rho)
// for the triangular blocks, as a speed.
inline double block_speed(double rho, const gas::Consts& c, int D) {
  double k = std::max(4.0 / 3.0 * c.mu, c.kappa * (c.gamma - 1.0));
  if (D == 2) k = std::max(k, c.mu);
  return std::sqrt(c.a2 + k / (c.eps * rho));
}

}  // namespace relaxflux::detail
