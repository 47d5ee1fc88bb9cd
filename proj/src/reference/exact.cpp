#include <cmath>

#include "relaxflux/core/error.hpp"
#include "relaxflux/reference.hpp"

namespace relaxflux::reference {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double burgers_exact(double x, double t, double mu) {
  const double e = std::exp(-kPi * kPi * mu * t);
  return 2.0 * mu * kPi * std::sin(kPi * x) * e / (2.0 + e * std::cos(kPi * x));
}

MmsFields mms_fields(double x, double y, double t) {
  return {1.0 + 0.2 * std::sin(kPi * (x + y - 2.0 * t)), 1.0, 1.0, 1.0};
}

Vec4 mms_forcing(double x, double y, double t, const RelaxParams& p) {
  const double th = kPi * (x + y - 2.0 * t);
  const double rho = 1.0 + 0.2 * std::sin(th);
  const double r1 = 0.2 * kPi * std::cos(th);          // d rho / dx = d rho / dy
  const double r2 = -0.2 * kPi * kPi * std::sin(th);   // second derivatives
  // T = 1/rho: T'' = -rho''/rho^2 + 2 rho'^2 / rho^3, twice for x and y.
  const double lap_T = 2.0 * (-r2 / (rho * rho) + 2.0 * r1 * r1 / (rho * rho * rho));
  return Vec4(0.0, 0.0, 0.0, -p.kappa() * lap_T);
}

namespace {

struct Side {
  double rho, u, p, c;
};

// Pressure function f_K(p) and its derivative for one side.
void pressure_fn(double p, const Side& s, double g, double& f, double& df) {
  if (p > s.p) {
    const double A = 2.0 / ((g + 1.0) * s.rho);
    const double B = (g - 1.0) / (g + 1.0) * s.p;
    const double q = std::sqrt(A / (p + B));
    f = (p - s.p) * q;
    df = q * (1.0 - 0.5 * (p - s.p) / (B + p));
  } else {
    const double pr = p / s.p;
    f = 2.0 * s.c / (g - 1.0) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
    df = 1.0 / (s.rho * s.c) * std::pow(pr, -(g + 1.0) / (2.0 * g));
  }
}

Side make_side(const Vec3& q, double g) {
  if (!(q[0] > 0.0) || !(q[2] > 0.0)) {
    throw SolverError(ErrorKind::NonPhysicalState, "Riemann data must have positive density and pressure");
  }
  return {q[0], q[1], q[2], std::sqrt(g * q[2] / q[0])};
}

}  // namespace

std::pair<double, double> euler_star_state(const Vec3& left, const Vec3& right, double g) {
  const Side L = make_side(left, g), R = make_side(right, g);
  const double du = R.u - L.u;
  if (2.0 * (L.c + R.c) / (g - 1.0) <= du) {
    throw SolverError(ErrorKind::VacuumFormation, "initial data generate vacuum");
  }
  // Two-rarefaction guess.
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((L.c + R.c - 0.5 * (g - 1.0) * du) /
                          (L.c / std::pow(L.p, z) + R.c / std::pow(R.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-14);
  for (int it = 0; it < 100; ++it) {
    double fl, dfl, fr, dfr;
    pressure_fn(p, L, g, fl, dfl);
    pressure_fn(p, R, g, fr, dfr);
    double pn = p - (fl + fr + du) / (dfl + dfr);
    if (pn <= 0.0) pn = 0.5 * p;
    const double change = 2.0 * std::abs(pn - p) / (pn + p);
    p = pn;
    if (change < 1e-14) {
      pressure_fn(p, L, g, fl, dfl);
      pressure_fn(p, R, g, fr, dfr);
      return {p, 0.5 * (L.u + R.u) + 0.5 * (fr - fl)};
    }
  }
  throw SolverError(ErrorKind::VacuumFormation, "pressure iteration did not converge");
}

Vec3 euler_exact_riemann(const Vec3& left, const Vec3& right, double g, double xi) {
  const Side L = make_side(left, g), R = make_side(right, g);
  const auto [ps, us] = euler_star_state(left, right, g);
  const double gm = (g - 1.0) / (g + 1.0);
  if (xi <= us) {
    if (ps > L.p) {
      const double S = L.u - L.c * std::sqrt((g + 1.0) / (2.0 * g) * ps / L.p + (g - 1.0) / (2.0 * g));
      if (xi <= S) return left;
      const double rho = L.rho * (ps / L.p + gm) / (gm * ps / L.p + 1.0);
      return Vec3(rho, us, ps);
    }
    const double c_star = L.c * std::pow(ps / L.p, (g - 1.0) / (2.0 * g));
    if (xi <= L.u - L.c) return left;
    if (xi >= us - c_star) return Vec3(L.rho * std::pow(ps / L.p, 1.0 / g), us, ps);
    const double c = 2.0 / (g + 1.0) * (L.c + 0.5 * (g - 1.0) * (L.u - xi));
    const double u = 2.0 / (g + 1.0) * (L.c + 0.5 * (g - 1.0) * L.u + xi);
    const double rho = L.rho * std::pow(c / L.c, 2.0 / (g - 1.0));
    return Vec3(rho, u, L.p * std::pow(c / L.c, 2.0 * g / (g - 1.0)));
  }
  if (ps > R.p) {
    const double S = R.u + R.c * std::sqrt((g + 1.0) / (2.0 * g) * ps / R.p + (g - 1.0) / (2.0 * g));
    if (xi >= S) return right;
    const double rho = R.rho * (ps / R.p + gm) / (gm * ps / R.p + 1.0);
    return Vec3(rho, us, ps);
  }
  const double c_star = R.c * std::pow(ps / R.p, (g - 1.0) / (2.0 * g));
  if (xi >= R.u + R.c) return right;
  if (xi <= us + c_star) return Vec3(R.rho * std::pow(ps / R.p, 1.0 / g), us, ps);
  const double c = 2.0 / (g + 1.0) * (R.c - 0.5 * (g - 1.0) * (R.u - xi));
  const double u = 2.0 / (g + 1.0) * (-R.c + 0.5 * (g - 1.0) * R.u + xi);
  const double rho = R.rho * std::pow(c / R.c, 2.0 / (g - 1.0));
  return Vec3(rho, u, R.p * std::pow(c / R.c, 2.0 * g / (g - 1.0)));
}

}  // namespace relaxflux::reference
