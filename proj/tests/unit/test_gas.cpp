#include <doctest.h>

#include <cmath>
#include <random>

#include "relaxflux/gas.hpp"
#include "relaxflux/ns1d.hpp"
#include "relaxflux/ns2d.hpp"
#include "relaxflux/reference.hpp"

using namespace relaxflux;

namespace {
const RelaxParams kGas = RelaxParams::gas(5e-5, 1.0, 5e-3, 1.4, 0.72);
}

TEST_CASE("primitive and conservative variables") {
  const Vec3 q = prim_from_cons(Vec3(1, 0, 2.5), 1.4);
  CHECK(q[0] == doctest::Approx(1.0));
  CHECK(q[1] == doctest::Approx(0.0));
  CHECK(q[2] == doctest::Approx(1.0));
  const Vec3 w = cons_from_prim(Vec3(0.125, 0, 0.8), 1.4);
  CHECK(gas::pressure<1>(w, 1.4) == doctest::Approx(0.1));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> r(0.1, 5.0), u(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Vec3 qq(r(rng), u(rng), r(rng));
    worst = std::max(worst, (prim_from_cons(cons_from_prim(qq, 1.4), 1.4) - qq).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-13);
  CHECK_THROWS_AS(prim_from_cons(Vec3(-1, 0, 1), 1.4), SolverError);
}

TEST_CASE("relaxation flux and source in 1-D") {
  Vec6 U;
  U << 1, 0, 2.5, 0, 0, 0;
  const Vec6 F = flux_ns1(U, kGas);
  CHECK(F.head<3>().isZero());
  CHECK(F[3] == doctest::Approx(1.0));
  CHECK(F[4] == doctest::Approx(0.0));
  CHECK(F[5] == doctest::Approx(kGas.kappa() / kGas.epsilon + 2.5));

  const auto inviscid = RelaxParams::gas(1.0, 1.0, 0.0, 1.4, 0.72);
  U << 1, 0.5, 3, 0.1, 0.2, 0.3;
  const Vec6 Fi = flux_ns1(U, inviscid);
  CHECK((Fi.head<3>() - U.tail<3>()).norm() < 1e-15);
  CHECK((Fi.tail<3>() - U.head<3>()).norm() < 1e-15);

  U << 1, 0, 2.5, 0, 0, 0;
  const Vec6 S = source_ns1(U, RelaxParams::gas(1.0, 1.0, 5e-3, 1.4, 0.72));
  CHECK(S.head<3>().isZero());
  CHECK(S[3] == doctest::Approx(0.0));
  CHECK(S[4] == doctest::Approx(1.0));
  CHECK(S[5] == doctest::Approx(0.0));
  U.tail<3>() = euler_flux_1d(U.head<3>(), 1.4);
  CHECK(source_ns1(U, kGas).isZero());
}

TEST_CASE("Roe matrix") {
  const Vec3 wl(1, 0, 2.5), wr(0.125, 0, 0.25);
  const auto same = roe_matrix_1d(wl, wl, kGas);
  CHECK((same.waves.reconstruct() - same.M).norm() < 1e-9 * same.M.norm());

  const auto roe = roe_matrix_1d(wl, wr, kGas);
  Vec6 Ul, Ur;
  Ul << wl, euler_flux_1d(wl, 1.4);
  Ur << wr, euler_flux_1d(wr, 1.4);
  const Vec6 jump = flux_ns1(Ur, kGas) - flux_ns1(Ul, kGas);
  CHECK((jump - roe.M * (Ur - Ul)).norm() < 1e-12 * jump.norm());
  for (int k = 0; k < 3; ++k) CHECK(roe.waves.lambda[k] == doctest::Approx(-roe.waves.lambda[5 - k]));

  CHECK((roe_solve_1d(Ul, Ul, kGas) - Ul).norm() < 1e-14);
  const Vec6 star = roe_solve_1d(Ul, Ur, kGas);
  CHECK(star.allFinite());
  CHECK(star[0] > 0.0);
}

TEST_CASE("entropy pair") {
  const double gamma = 1.4;
  const Vec3 w = cons_from_prim(Vec3(1.0, 0.3, 1.0), gamma);
  const Vec3 hot = cons_from_prim(Vec3(1.0, 0.3, std::exp(gamma - 1.0)), gamma);
  const auto e0 = entropy_pair(w, gamma), e1 = entropy_pair(hot, gamma);
  CHECK(e1.S - e0.S == doctest::Approx(1.0));
  CHECK(e1.eta - e0.eta == doctest::Approx(-1.0));
  CHECK(e0.g == doctest::Approx(0.3 * e0.eta));
}

TEST_CASE("uniform gas is a fixed point in 1-D and 2-D") {
  const Grid1D g(0.0, 1.0, 20);
  const auto bc = Boundary1D::both(BoundarySpec::periodic());
  auto s = make_gas_state_1d(g, [](double) { return Vec3(1.2, 0.4, 0.9); }, kGas, bc);
  const auto before = s.U;
  for (int k = 0; k < 10; ++k) imex_grp_step_ns1(s, kGas, 1e-4, bc);
  double diff = 0.0;
  for (int j = 0; j < 20; ++j) diff = std::max(diff, (s.U(j) - before(j)).cwiseAbs().maxCoeff());
  CHECK(diff < 1e-13);

  const Grid2D g2{Grid1D(0.0, 1.0, 8), Grid1D(0.0, 1.0, 8)};
  const auto bc2 = Boundary2D::all(BoundarySpec::periodic());
  auto s2 = make_gas_state_2d(g2, [](double, double) { return Vec4(1.0, 0.3, -0.2, 1.0); }, kGas, bc2);
  const auto b2 = s2.U;
  for (int k = 0; k < 5; ++k) step_ns2(s2, kGas, 1e-4, bc2);
  double d2 = 0.0;
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) d2 = std::max(d2, (s2.U(i, j) - b2(i, j)).cwiseAbs().maxCoeff());
  CHECK(d2 < 1e-13);
}

TEST_CASE("2-D fluxes and mixed source") {
  const auto inviscid = RelaxParams::gas(1.0, 1.0, 0.0, 1.4, 0.72);
  Vec12 U = Vec12::Zero();
  U.head<4>() << 1.0, 0.2, 0.1, 2.6;
  U.segment<4>(4) << 0.5, 0.6, 0.7, 0.8;
  U.tail<4>() << -0.5, -0.6, -0.7, -0.8;
  const Vec12 F = flux_x_2d(U, inviscid);
  CHECK((F.head<4>() - U.segment<4>(4)).norm() < 1e-15);
  CHECK((F.segment<4>(4) - U.head<4>()).norm() < 1e-15);
  CHECK(F.tail<4>().isZero());
  const Vec12 G = flux_y_2d(U, inviscid);
  CHECK((G.head<4>() - U.tail<4>()).norm() < 1e-15);
  CHECK((G.tail<4>() - U.head<4>()).norm() < 1e-15);

  const Vec4 q(1.0, 0.0, 0.0, 1.0), grad(0.3, 0.5, -0.2, 0.1);
  CHECK(mixed_source_h(q, grad, 0, kGas).isZero());
  CHECK(mixed_source_h(q, grad, 1, kGas).isZero());
}

TEST_CASE("2-D fluxes reduce to 1-D for x-only data") {
  Vec12 U = Vec12::Zero();
  U.head<4>() << 1.1, 0.3, 0.0, 2.7;
  const Vec4 q = gas::prim_from_cons<2>(U.head<4>(), 1.4);
  const Vec3 w1(1.1, 0.3, 2.7);
  U.segment<4>(4) << gas::euler_flux<2>(U.head<4>(), 1.4);
  const Vec12 F = flux_x_2d(U, kGas);
  Vec6 U1;
  U1 << w1, euler_flux_1d(w1, 1.4);
  const Vec6 F1 = flux_ns1(U1, kGas);
  CHECK(F[4] == doctest::Approx(F1[3]));
  CHECK(F[5] == doctest::Approx(F1[4]));
  CHECK(F[7] == doctest::Approx(F1[5]));
  CHECK(q[2] == 0.0);
}

TEST_CASE("Sod star state") {
  const auto [p, u] = reference::euler_star_state(Vec3(1, 0, 1), Vec3(0.125, 0, 0.1), 1.4);
  CHECK(p == doctest::Approx(0.30313).epsilon(1e-4));
  CHECK(u == doctest::Approx(0.92745).epsilon(1e-4));

  const Vec3 s(0.7, 0.2, 0.5);
  for (double xi : {-3.0, 0.0, 2.0}) CHECK((reference::euler_exact_riemann(s, s, 1.4, xi) - s).norm() < 1e-12);
  CHECK((reference::euler_exact_riemann(Vec3(1, 0, 1), Vec3(0.125, 0, 0.1), 1.4, -5.0) - Vec3(1, 0, 1)).norm() <
        1e-14);
  CHECK((reference::euler_exact_riemann(Vec3(1, 0, 1), Vec3(0.125, 0, 0.1), 1.4, 5.0) - Vec3(0.125, 0, 0.1))
            .norm() < 1e-14);
}
