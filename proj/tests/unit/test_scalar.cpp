#include <doctest.h>

#include <cmath>
#include <numbers>

#include "relaxflux/boundary.hpp"
#include "relaxflux/core/timestep.hpp"
#include "relaxflux/reference.hpp"
#include "relaxflux/scalar1d.hpp"

using namespace relaxflux;

TEST_CASE("scalar flux and source") {
  const auto law = ScalarLaw::burgers();
  CHECK(flux_scalar(Vec2(0, 0), RelaxParams::scalar(0.01, 0.0, 0.01), law).isZero());
  const Vec2 f = flux_scalar(Vec2(1, 2), RelaxParams::scalar(0.01, 0.0, 0.01), law);
  CHECK(f[0] == doctest::Approx(2.0));
  CHECK(f[1] == doctest::Approx(1.0));
  const Vec2 g = flux_scalar(Vec2(2, 0), RelaxParams::scalar(0.25, 1.0, 1.0), law);
  CHECK(g[1] == doctest::Approx(10.0));

  CHECK(source_scalar(Vec2(3, 4.5), RelaxParams::scalar(0.1, 0.0, 0.01), law).isZero());
  CHECK(source_scalar(Vec2(2, 0), RelaxParams::scalar(0.5, 0.0, 0.01), law)[1] == doctest::Approx(4.0));
  CHECK(source_scalar(Vec2(1, 1), RelaxParams::scalar(1.0, 0.0, 0.01), law)[1] == doctest::Approx(-0.5));
}

TEST_CASE("subcharacteristic check") {
  const auto law = ScalarLaw::burgers();
  const double dx = 1.0 / 64, mu = 0.01;
  CHECK(subchar_check(RelaxParams::scalar(dx * dx / mu, 0.0, mu), law, -0.64, 0.64).holds);
  CHECK_FALSE(subchar_check(RelaxParams::scalar(1.0, 0.0, 1.0), law, -10.0, 10.0).holds);

  ScalarLaw flat = law;
  flat.f = [](double) { return 0.0; };
  flat.fprime = [](double) { return 0.0; };
  CHECK(subchar_check(RelaxParams::scalar(1.0, 0.0, 0.1), flat, -1.0, 1.0).holds);
}

TEST_CASE("upwind Riemann state") {
  const auto p = RelaxParams::scalar(1.0, 0.0, 1.0);
  const Vec2 U(0.3, -0.2);
  CHECK((riemann_upwind_scalar(U, U, p) - U).norm() < 1e-15);
  const Vec2 s = riemann_upwind_scalar(Vec2(1, 0), Vec2(0, 0), p);
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s[1] == doctest::Approx(0.5));
}

TEST_CASE("scalar boundary states") {
  const auto law = ScalarLaw::burgers();
  const Vec2 d = scalar_dirichlet_state(0.0, 0.0, 0.01, 0.1, -1, law.f, law.phi);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == doctest::Approx(law.f(0.0)));
  const Vec2 n = scalar_neumann_state(2.0, law.f);
  CHECK(n[0] == doctest::Approx(2.0));
  CHECK(n[1] == doctest::Approx(2.0));
  CHECK(scalar_neumann_state(0.0, law.f).isZero());
}

TEST_CASE("equilibrium constant state is a fixed point of every scheme") {
  const auto law = ScalarLaw::burgers();
  const auto p = RelaxParams::scalar(1e-3, 0.5, 0.01);
  const auto bc = Boundary1D::both(BoundarySpec::periodic());
  for (auto scheme : {ScalarScheme::Upwind1, ScalarScheme::Upwind2, ScalarScheme::ImexGrp}) {
    auto s = make_scalar_state(Grid1D(0.0, 1.0, 32), [](double) { return 0.7; }, {}, p, law, bc);
    const auto before = s.U;
    for (int k = 0; k < 20; ++k) step_scalar(scheme, s, p, law, 1e-3, bc);
    double diff = 0.0;
    for (int j = 0; j < 32; ++j) diff = std::max(diff, (s.U(j) - before(j)).cwiseAbs().maxCoeff());
    CHECK(diff < 1e-14);
  }
}

TEST_CASE("stiff source projects onto equilibrium") {
  const auto law = ScalarLaw::burgers();
  const auto p = RelaxParams::scalar(1e-12, 1.0, 0.0);
  const auto bc = Boundary1D::both(BoundarySpec::periodic());
  auto s = make_scalar_state(Grid1D(0.0, 1.0, 16), [](double x) { return 1.0 + 0.1 * std::sin(2 * std::numbers::pi * x); },
                             {}, p, law, bc);
  for (int j = 0; j < 16; ++j) s.U(j)[1] = 0.0;
  step_example1(s, p, law, 1e-3, bc);
  for (int j = 0; j < 16; ++j) CHECK(s.U(j)[1] == doctest::Approx(law.f(s.U(j)[0])).epsilon(1e-8));
}

TEST_CASE("burgers exact solution") {
  const double mu = 0.01;
  CHECK(reference::burgers_exact(0.0, 3.0, mu) == doctest::Approx(0.0));
  CHECK(std::abs(reference::burgers_exact(1.0, 3.0, mu)) < 1e-15);
  const double x = 0.3, pi = std::numbers::pi;
  CHECK(reference::burgers_exact(x, 0.0, mu) ==
        doctest::Approx(2 * mu * pi * std::sin(pi * x) / (2 + std::cos(pi * x))));
}

TEST_CASE("second-order convergence on the Burgers problem") {
  const auto law = ScalarLaw::burgers();
  const double mu = 0.01, t_end = 1.0;
  double err[2];
  for (int level = 0; level < 2; ++level) {
    const int n = 64 << level;
    const Grid1D g(0.0, 1.0, n);
    const auto p = RelaxParams::scalar(g.dx() * g.dx() / mu, 0.0, mu);
    auto zero = [](double) { return 0.0; };
    const auto bc = Boundary1D{BoundarySpec::dirichlet(zero, zero), BoundarySpec::dirichlet(zero, zero)};
    auto s = make_scalar_state(g, [mu](double x) { return reference::burgers_exact(x, 0.0, mu); }, {}, p, law, bc);
    const TimeControl tc{0.7, t_end};
    while (s.t < t_end - 1e-14) {
      const double dt = compute_dt(max_wave_speed(s, p, law), g.dx(), std::nullopt, std::nullopt, tc, s.t);
      imex_grp_step_scalar(s, p, law, dt, bc);
    }
    std::vector<double> u(n);
    for (int j = 0; j < n; ++j) u[j] = s.U(j)[0];
    err[level] = reference::error_norms(u, [&](double x) { return reference::burgers_exact(x, t_end, mu); }, g).l1;
  }
  CHECK(reference::observed_order(err[0], err[1]) > 1.8);
}
