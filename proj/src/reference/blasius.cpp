#include <array>
#include <cmath>

#include "relaxflux/core/error.hpp"
#include "relaxflux/reference.hpp"

namespace relaxflux::reference {

namespace {

using State = std::array<double, 3>;  // f, f', f''

State rhs(const State& y) { return {y[1], y[2], -0.5 * y[0] * y[2]}; }

State rk4(const State& y, double h) {
  auto add = [](const State& a, const State& b, double s) {
    return State{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  const State k1 = rhs(y);
  const State k2 = rhs(add(y, k1, 0.5 * h));
  const State k3 = rhs(add(y, k2, 0.5 * h));
  const State k4 = rhs(add(y, k3, h));
  State out;
  for (int m = 0; m < 3; ++m) out[m] = y[m] + h / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
  return out;
}

double shoot(double s, double eta_max, int steps) {
  State y{0.0, 0.0, s};
  const double h = eta_max / steps;
  for (int k = 0; k < steps; ++k) y = rk4(y, h);
  return y[1] - 1.0;
}

}  // namespace

BlasiusProfile blasius_profile(double eta_max, int n_points) {
  if (eta_max < 8.0 || n_points < 2) {
    throw SolverError(ErrorKind::InvalidArgument, "Blasius profile needs eta_max >= 8 and two points");
  }
  const int steps = n_points - 1;
  double lo = 0.1, hi = 1.0;
  double flo = shoot(lo, eta_max, steps), fhi = shoot(hi, eta_max, steps);
  if (!(flo < 0.0 && fhi > 0.0)) {
    throw SolverError(ErrorKind::ShootingNoConvergence, "shooting parameter is not bracketed");
  }
  int it = 0;
  for (; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = shoot(mid, eta_max, steps);
    if (!std::isfinite(fm)) throw SolverError(ErrorKind::ShootingNoConvergence, "shooting diverged");
    (fm < 0.0 ? lo : hi) = mid;
  }
  if (hi - lo > 1e-12) throw SolverError(ErrorKind::ShootingNoConvergence, "bisection did not converge");

  BlasiusProfile b;
  b.fpp0 = 0.5 * (lo + hi);
  State y{0.0, 0.0, b.fpp0};
  const double h = eta_max / steps;
  for (int k = 0; k <= steps; ++k) {
    b.eta.push_back(k * h);
    b.f.push_back(y[0]);
    b.fp.push_back(y[1]);
    b.fpp.push_back(y[2]);
    if (k < steps) y = rk4(y, h);
  }
  return b;
}

std::pair<double, double> BlasiusProfile::sample(double e) const {
  if (e <= 0.0) return {0.0, 0.0};
  const double h = eta[1] - eta[0];
  if (e >= eta.back()) return {1.0, f.back() + (e - eta.back())};
  const int k = static_cast<int>(e / h);
  const double s = (e - eta[k]) / h;
  return {fp[k] + s * (fp[k + 1] - fp[k]), f[k] + s * (f[k + 1] - f[k])};
}

std::pair<double, double> BlasiusProfile::velocity(double x, double y, double re) const {
  if (x <= 0.0) return {1.0, 0.0};
  const double rex = re * x;
  const double e = y * std::sqrt(rex) / x;
  const auto [fpv, fv] = sample(e);
  return {fpv, (e * fpv - fv) / (2.0 * std::sqrt(rex))};
}

BenchmarkCurve blasius_u_curve(const BlasiusProfile& b) { return {b.eta, b.fp, "blasius f'(eta)"}; }

}  // namespace relaxflux::reference
