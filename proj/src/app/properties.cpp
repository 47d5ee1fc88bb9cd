#include "relaxflux/app/properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "relaxflux/core/timestep.hpp"
#include "relaxflux/ns1d.hpp"
#include "relaxflux/ns2d.hpp"
#include "relaxflux/reference.hpp"
#include "relaxflux/scalar1d.hpp"

namespace relaxflux::app {

namespace ref = relaxflux::reference;

namespace {

PropertyResult make(const std::string& name, double measured, double bound, bool passed,
                    const std::string& detail = "") {
  return {name, passed, measured, bound, detail};
}

RelaxParams gas_params() { return RelaxParams::gas(0.005 / 100.0, 1.0, 0.005, 1.4, 0.72); }

Vec6 random_gas_state(std::mt19937_64& rng, const RelaxParams& p) {
  std::uniform_real_distribution<double> rho(0.1, 2.0), u(-2.0, 2.0), pr(0.1, 3.0), dv(-1.0, 1.0);
  Vec3 q(rho(rng), u(rng), 0.0);
  q[2] = pr(rng) / q[0];
  const Vec3 w = cons_from_prim(q, p.g());
  Vec6 U;
  U.head<3>() = w;
  U.tail<3>() = euler_flux_1d(w, p.g()) + Vec3(dv(rng), dv(rng), dv(rng));
  return U;
}

// Smooth periodic 1-D gas data on [0, 1].
Vec3 density_wave(double x) { return Vec3(1.0 + 0.2 * std::sin(2.0 * M_PI * x), 0.5, 1.0); }

double relative_change(double before, double after) {
  return std::abs(after - before) / std::max(std::abs(before), 1e-300);
}

}  // namespace

PropertyResult roe_identity_check(std::uint64_t seed, int pairs) {
  std::mt19937_64 rng(seed);
  const RelaxParams p = gas_params();
  double worst = 0.0;
  for (int k = 0; k < pairs; ++k) {
    const Vec6 Ul = random_gas_state(rng, p), Ur = random_gas_state(rng, p);
    const RoeMatrix1D roe = roe_matrix_1d(Ul.head<3>(), Ur.head<3>(), p);
    const Vec6 dF = flux_ns1(Ur, p) - flux_ns1(Ul, p);
    const Vec6 res = dF - roe.M * (Ur - Ul);
    worst = std::max(worst, res.norm() / std::max(dF.norm(), roe.M.norm() * (Ur - Ul).norm()));
  }
  return make("roe_identity", worst, 1e-12, worst <= 1e-12, std::to_string(pairs) + " random pairs");
}

PropertyResult eigen_symmetry_check(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed + 1);
  const RelaxParams p = gas_params();
  double sym = 0.0, recon = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Vec6 Ul = random_gas_state(rng, p), Ur = random_gas_state(rng, p);
    const RoeMatrix1D roe = roe_matrix_1d(Ul.head<3>(), Ur.head<3>(), p);
    const auto& l = roe.waves.lambda;
    for (int m = 0; m < 6; ++m) sym = std::max(sym, std::abs(l[m] + l[5 - m]) / roe.waves.spectral_radius());
    recon = std::max(recon, (roe.waves.reconstruct() - roe.M).norm() / roe.M.norm());
  }
  std::ostringstream d;
  d << "max |R Lambda R^-1 - M| / |M| = " << recon;
  return make("eigen_symmetry", std::max(sym, recon), 1e-10, sym <= 1e-12 && recon <= 1e-10, d.str());
}

std::vector<PropertyResult> conservation_checks() {
  std::vector<PropertyResult> out;
  const int steps = 1000;
  {
    const Grid1D g(0.0, 1.0, 64);
    const RelaxParams p = RelaxParams::scalar(1e-3, 0.5, 0.01);
    const ScalarLaw law = ScalarLaw::burgers();
    const auto bc = Boundary1D::both(BoundarySpec::periodic());
    auto s = make_scalar_state(
        g, [](double x) { return 0.5 + 0.25 * std::sin(2.0 * M_PI * x); }, {}, p, law, bc);
    const double m0 = total_mass(s);
    const TimeControl tc{0.5, 1e9};
    for (int k = 0; k < steps; ++k) {
      const double dt = compute_dt(max_wave_speed(s, p, law), g.dx(), std::nullopt, std::nullopt, tc, s.t);
      imex_grp_step_scalar(s, p, law, dt, bc, Limiter::minmod(2.0));
    }
    const double e = relative_change(m0, total_mass(s));
    out.push_back(make("conservation_scalar", e, 1e-11, e <= 1e-11, "1000 periodic steps"));
  }
  {
    const Grid1D g(0.0, 1.0, 64);
    const RelaxParams p = RelaxParams::gas(1e-4, 1.0, 0.01, 1.4, 0.72);
    const auto bc = Boundary1D::both(BoundarySpec::periodic());
    auto s = make_gas_state_1d(g, density_wave, p, bc, Limiter::minmod(2.0));
    const Vec3 t0 = conserved_totals(s);
    const TimeControl tc{0.7, 1e9};
    for (int k = 0; k < steps; ++k) {
      const double dt = compute_dt(max_wave_speed_ns1(s, p), g.dx(), std::nullopt, std::nullopt, tc, s.t);
      imex_grp_step_ns1(s, p, dt, bc, Limiter::minmod(2.0));
    }
    const Vec3 t1 = conserved_totals(s);
    double e = 0.0;
    for (int k = 0; k < 3; ++k) e = std::max(e, std::abs(t1[k] - t0[k]) / std::max(std::abs(t0[k]), 1.0));
    out.push_back(make("conservation_ns1", e, 1e-11, e <= 1e-11, "mass, momentum, energy; 1000 periodic steps"));
  }
  {
    const Grid2D g{Grid1D(0.0, 1.0, 16), Grid1D(0.0, 1.0, 16)};
    const RelaxParams p = RelaxParams::gas(1e-4, 1.0, 0.01, 1.4, 0.72);
    const auto bc = Boundary2D::all(BoundarySpec::periodic());
    auto s = make_gas_state_2d(
        g,
        [](double x, double y) {
          return Vec4(1.0 + 0.2 * std::sin(2.0 * M_PI * (x + y)), 0.5, -0.3, 1.0 + 0.1 * std::cos(2.0 * M_PI * x));
        },
        p, bc);
    const Vec4 t0 = conserved_totals(s);
    const TimeControl tc{0.3, 1e9};
    for (int k = 0; k < steps; ++k) {
      const auto sp = max_wave_speed_ns2(s, p);
      step_ns2(s, p, compute_dt(sp.x, g.dx(), sp.y, g.dy(), tc, s.t), bc);
    }
    const Vec4 t1 = conserved_totals(s);
    double e = 0.0;
    for (int k = 0; k < 4; ++k) e = std::max(e, std::abs(t1[k] - t0[k]) / std::max(std::abs(t0[k]), 1.0));
    out.push_back(make("conservation_ns2", e, 1e-11, e <= 1e-11, "mass, momenta, energy; 1000 periodic steps"));
  }
  return out;
}

std::vector<PropertyResult> fixed_point_checks() {
  std::vector<PropertyResult> out;
  const int steps = 20;
  {
    const Grid1D g(0.0, 1.0, 32);
    const RelaxParams p = RelaxParams::scalar(1e-3, 0.5, 0.01);
    const ScalarLaw law = ScalarLaw::burgers();
    const auto bc = Boundary1D::both(BoundarySpec::periodic());
    auto s = make_scalar_state(g, [](double) { return 0.3; }, {}, p, law, bc);
    const auto U0 = s.U;
    for (int k = 0; k < steps; ++k) imex_grp_step_scalar(s, p, law, 1e-3, bc, Limiter::minmod(2.0));
    double e = 0.0;
    for (int j = 0; j < g.n_cells(); ++j) e = std::max(e, (s.U(j) - U0(j)).cwiseAbs().maxCoeff());
    out.push_back(make("fixed_point_scalar", e, 1e-14, e <= 1e-14));
  }
  {
    const Grid1D g(0.0, 1.0, 32);
    const RelaxParams p = RelaxParams::gas(1e-4, 1.0, 0.01, 1.4, 0.72);
    for (const char* kind : {"periodic", "wall"}) {
      const bool wall = std::string(kind) == "wall";
      const auto bc = Boundary1D::both(wall ? BoundarySpec::wall_adiabatic() : BoundarySpec::periodic());
      auto s = make_gas_state_1d(g, [wall](double) { return Vec3(1.3, wall ? 0.0 : 0.4, 0.9); }, p, bc);
      const auto U0 = s.U;
      for (int k = 0; k < steps; ++k) imex_grp_step_ns1(s, p, 1e-3, bc, Limiter::minmod(2.0));
      double e = 0.0;
      for (int j = 0; j < g.n_cells(); ++j) e = std::max(e, (s.U(j) - U0(j)).cwiseAbs().maxCoeff());
      out.push_back(make(std::string("fixed_point_ns1_") + kind, e, 1e-14, e <= 1e-14));
    }
  }
  {
    const Grid2D g{Grid1D(0.0, 1.0, 8), Grid1D(0.0, 1.0, 8)};
    const RelaxParams p = RelaxParams::gas(1e-4, 1.0, 0.01, 1.4, 0.72);
    const auto bc = Boundary2D::all(BoundarySpec::periodic());
    auto s = make_gas_state_2d(g, [](double, double) { return Vec4(1.3, 0.4, -0.2, 0.9); }, p, bc);
    const auto U0 = s.U;
    for (int k = 0; k < steps; ++k) step_ns2(s, p, 1e-3, bc, Limiter::minmod(2.0));
    double e = 0.0;
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i) e = std::max(e, (s.U(i, j) - U0(i, j)).cwiseAbs().maxCoeff());
    out.push_back(make("fixed_point_ns2", e, 1e-14, e <= 1e-14));
  }
  return out;
}

PropertyResult relaxation_residual_check() {
  const double mu = 0.01;
  const ScalarLaw law = ScalarLaw::burgers();
  const auto bc = Boundary1D::both(BoundarySpec::periodic());
  std::vector<double> ratio;
  std::ostringstream d;
  for (int n : {32, 64, 128, 256}) {
    const Grid1D g(0.0, 1.0, n);
    const double eps = g.dx() * g.dx();
    const RelaxParams p = RelaxParams::scalar(eps, 0.0, mu);
    auto s = make_scalar_state(
        g, [](double x) { return 0.5 + 0.25 * std::sin(2.0 * M_PI * x); },
        [](double x) { return 0.5 * M_PI * std::cos(2.0 * M_PI * x); }, p, law, bc);
    const TimeControl tc{0.5, 0.5};
    double dt = 0.0;
    while (s.t < tc.t_end - 1e-12) {
      dt = compute_dt(max_wave_speed(s, p, law), g.dx(), std::nullopt, std::nullopt, tc, s.t);
      imex_grp_step_scalar(s, p, law, dt, bc);
    }
    const double r = relaxation_residual(s, p, law);
    ratio.push_back(r / (eps + g.dx() * g.dx() + dt));
    d << "N=" << n << " residual=" << r << " ";
  }
  const double C = 2.0 * std::max(ratio[0], ratio[1]);
  const double worst = *std::max_element(ratio.begin(), ratio.end());
  return make("relaxation_residual", worst, C, worst <= C, d.str());
}

PropertyResult reduction_2d_1d_check() {
  const int n = 32;
  const RelaxParams p = RelaxParams::gas(1e-3, 1.0, 0.01, 1.4, 0.72);
  const Grid1D gx(0.0, 1.0, n);
  const Grid2D g2{gx, Grid1D(0.0, 0.25, 4)};
  const auto bc1 = Boundary1D::both(BoundarySpec::periodic());
  const auto bc2 = Boundary2D::all(BoundarySpec::periodic());
  auto s1 = make_gas_state_1d(gx, density_wave, p, bc1);
  auto s2 = make_gas_state_2d(
      g2, [](double x, double) { const Vec3 q = density_wave(x); return Vec4(q[0], q[1], 0.0, q[2]); }, p, bc2);
  const int map2[6] = {0, 1, 3, 4, 5, 7};
  auto diff = [&] {
    double e = 0.0;
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < 6; ++k)
          e = std::max(e, std::abs(s2.U(i, j)[map2[k]] - s1.U(i)[k]) / (1.0 + std::abs(s1.U(i)[k])));
    return e;
  };
  double worst = diff();
  const TimeControl tc{0.3, 1e9};
  for (int k = 0; k < 20; ++k) {
    const double dt = compute_dt(max_wave_speed_ns2(s2, p).x, gx.dx(), std::nullopt, std::nullopt, tc, 0.0);
    imex_grp_step_ns1(s1, p, dt, bc1);
    step_ns2(s2, p, dt, bc2);
    worst = std::max(worst, diff() / (k + 1));
  }
  return make("reduction_2d_1d", worst, 1e-12, worst <= 1e-12, "max per-step relative deviation over 20 steps");
}

PropertyResult xy_symmetry_check() {
  const RelaxParams p = RelaxParams::gas(1e-3, 1.0, 0.01, 1.4, 0.72);
  const auto bc = Boundary2D{BoundarySpec::wall_adiabatic(), BoundarySpec::extrapolation(),
                             BoundarySpec::wall_adiabatic(), BoundarySpec::extrapolation()};
  const auto bct = bc;  // symmetric under x <-> y
  const Grid2D g{Grid1D(0.0, 1.0, 12), Grid1D(0.0, 1.0, 12)};
  auto prim = [](double x, double y) {
    return Vec4(1.0 + 0.3 * std::exp(-20.0 * ((x - 0.4) * (x - 0.4) + (y - 0.7) * (y - 0.7))),
                0.2 * std::sin(M_PI * y) * x, -0.1 * y * y, 1.0 + 0.2 * x * y);
  };
  auto s = make_gas_state_2d(g, prim, p, bc, Limiter::minmod(2.0));
  auto t = make_gas_state_2d(
      g, [&](double x, double y) { const Vec4 q = prim(y, x); return Vec4(q[0], q[2], q[1], q[3]); }, p, bct,
      Limiter::minmod(2.0));
  auto mirror = [](const Vec12& U) {
    Vec12 m;
    const int perm[12] = {0, 2, 1, 3, 8, 10, 9, 11, 4, 6, 5, 7};
    for (int k = 0; k < 12; ++k) m[k] = U[perm[k]];
    return m;
  };
  double worst = 0.0;
  const TimeControl tc{0.3, 1e9};
  for (int k = 0; k < 10; ++k) {
    const auto sp = max_wave_speed_ns2(s, p);
    const double dt = compute_dt(sp.x, g.dx(), sp.y, g.dy(), tc, 0.0);
    step_ns2(s, p, dt, bc, Limiter::minmod(2.0));
    step_ns2(t, p, dt, bct, Limiter::minmod(2.0));
    for (int j = 0; j < 12; ++j)
      for (int i = 0; i < 12; ++i) {
        const Vec12 a = s.U(i, j), b = mirror(t.U(j, i));
        worst = std::max(worst, ((a - b).cwiseAbs().array() / (1.0 + a.cwiseAbs().array())).maxCoeff());
      }
  }
  return make("xy_symmetry", worst, 1e-12, worst <= 1e-12, "transposed data, 10 steps with walls");
}

PropertyResult burgers_oracle_check() {
  const double mu = 0.01, t_end = 10.0;
  const ScalarLaw law = ScalarLaw::burgers();
  const auto zero = [](double) { return 0.0; };
  const Boundary1D bc = Boundary1D::both(BoundarySpec::dirichlet(zero));
  std::ostringstream d;
  bool ok = true;
  double worst_ratio = 0.0;
  for (int n : {64, 128}) {
    const Grid1D g(0.0, 1.0, n);
    const RelaxParams p = RelaxParams::scalar(g.dx() * g.dx() / mu, 0.0, mu);
    auto s = make_scalar_state(
        g, [mu](double x) { return ref::burgers_exact(x, 0.0, mu); }, {}, p, law, bc);
    const TimeControl tc{0.7, t_end};
    while (s.t < t_end - 1e-12) {
      imex_grp_step_scalar(s, p, law, compute_dt(max_wave_speed(s, p, law), g.dx(), std::nullopt, std::nullopt, tc, s.t),
                           bc);
    }
    std::vector<double> u0(n), uimex(n);
    for (int j = 0; j < n; ++j) {
      u0[j] = ref::burgers_exact(g.center(j), 0.0, mu);
      uimex[j] = s.U(j)[0];
    }
    const auto ufd = ref::fd_oracle_burgers(u0, mu, g.dx(), t_end);
    const auto exact = [&](double x) { return ref::burgers_exact(x, t_end, mu); };
    const double e_imex = ref::error_norms(uimex, exact, g).l1;
    const double e_fd = ref::error_norms(ufd, exact, g).l1;
    double diff = 0.0;
    for (int j = 0; j < n; ++j) diff += std::abs(uimex[j] - ufd[j]) * g.dx();
    const double ratio = diff / (3.0 * (e_imex + e_fd));
    worst_ratio = std::max(worst_ratio, ratio);
    ok = ok && ratio <= 1.0;
    d << "N=" << n << " diff=" << diff << " e_imex=" << e_imex << " e_fd=" << e_fd << " ";
  }
  return make("oracle_burgers", worst_ratio, 1.0, ok, d.str());
}

PropertyResult ns1_oracle_check() {
  const RelaxParams p = RelaxParams::gas(1e-5, 1.0, 0.01, 1.4, 0.72);
  const double t_end = 0.2;
  std::ostringstream d;
  bool ok = true;
  double worst_ratio = 0.0;
  std::vector<double> errs;
  for (int n : {32, 64}) {
    const Grid1D g(0.0, 1.0, n);
    const auto bc = Boundary1D::both(BoundarySpec::periodic());
    auto s = make_gas_state_1d(g, density_wave, p, bc);
    const TimeControl tc{0.7, t_end};
    while (s.t < t_end - 1e-12) {
      imex_grp_step_ns1(s, p, compute_dt(max_wave_speed_ns1(s, p), g.dx(), std::nullopt, std::nullopt, tc, s.t), bc);
    }
    auto sample = [&](int m) {
      const Grid1D gf(0.0, 1.0, m);
      std::vector<Vec3> w0(m);
      for (int j = 0; j < m; ++j) {
        const Vec3 q = density_wave(gf.center(j));
        w0[j] = cons_from_prim(Vec3(q[0], q[1], q[2] / q[0]), p.g());
      }
      return w0;
    };
    const auto fd = ref::fd_oracle_ns1(sample(n), p, g.dx(), t_end);
    const auto fine = ref::fd_oracle_ns1(sample(3 * n), p, g.dx() / 3.0, t_end);
    double e_imex = 0.0, e_fd = 0.0, diff = 0.0;
    for (int j = 0; j < n; ++j) {
      const double r = fine[3 * j + 1][0];
      e_imex += std::abs(s.U(j)[0] - r) * g.dx();
      e_fd += std::abs(fd[j][0] - r) * g.dx();
      diff += std::abs(s.U(j)[0] - fd[j][0]) * g.dx();
    }
    const double ratio = diff / (3.0 * (e_imex + e_fd));
    worst_ratio = std::max(worst_ratio, ratio);
    ok = ok && ratio <= 1.0;
    errs.push_back(e_imex);
    d << "N=" << n << " diff=" << diff << " e_imex=" << e_imex << " e_fd=" << e_fd << " ";
  }
  ok = ok && errs[1] < errs[0];
  return make("oracle_ns1", worst_ratio, 1.0, ok, d.str());
}

PropertyResult subchar_violation_check() {
  const ScalarLaw law = ScalarLaw::burgers();
  const auto bad = subchar_check(RelaxParams::scalar(0.1, 0.0, 0.01), law, -1.0, 1.0);
  const auto good = subchar_check(RelaxParams::scalar(1e-3, 1.0, 0.01), law, -1.0, 1.0);
  const bool ok = !bad.holds && bad.margin < 0.0 && good.holds;
  std::ostringstream d;
  d << "violating margin " << bad.margin << ", admissible margin " << good.margin;
  return make("subcharacteristic_flag", bad.margin, 0.0, ok, d.str());
}

std::vector<PropertyResult> property_suite(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  out.push_back(roe_identity_check(seed));
  out.push_back(eigen_symmetry_check(seed));
  for (auto& r : conservation_checks()) out.push_back(r);
  for (auto& r : fixed_point_checks()) out.push_back(r);
  out.push_back(relaxation_residual_check());
  out.push_back(reduction_2d_1d_check());
  out.push_back(xy_symmetry_check());
  out.push_back(burgers_oracle_check());
  out.push_back(ns1_oracle_check());
  out.push_back(subchar_violation_check());
  return out;
}

std::vector<ApPoint> ap_sweep(double alpha, const std::vector<double>& eps, double t_end, double mu, double cfl) {
  std::vector<ApPoint> out;
  const ScalarLaw law = ScalarLaw::burgers();
  const auto zero = [](double) { return 0.0; };
  const Boundary1D bc = Boundary1D::both(BoundarySpec::dirichlet(zero));
  for (double e : eps) {
    const int n = std::max(4, static_cast<int>(std::lround(1.0 / std::pow(e, alpha))));
    const Grid1D g(0.0, 1.0, n);
    const RelaxParams p = RelaxParams::scalar(e, 0.0, mu);
    auto s = make_scalar_state(
        g, [mu](double x) { return ref::burgers_exact(x, 0.0, mu); }, {}, p, law, bc);
    const TimeControl tc{cfl, t_end};
    while (s.t < t_end - 1e-12) {
      const double dt = compute_dt(std::sqrt(mu / e), g.dx(), std::nullopt, std::nullopt, tc, s.t);
      imex_grp_step_scalar(s, p, law, dt, bc);
    }
    std::vector<double> u(n);
    for (int j = 0; j < n; ++j) u[j] = s.U(j)[0];
    const double l1 = ref::error_norms(u, [&](double x) { return ref::burgers_exact(x, t_end, mu); }, g).l1;
    out.push_back({e, n, s.steps, l1});
  }
  return out;
}

}  // namespace relaxflux::app
