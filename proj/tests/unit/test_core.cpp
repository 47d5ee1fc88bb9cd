#include <doctest.h>

#include <cmath>

#include "relaxflux/core/eigen_block.hpp"
#include "relaxflux/core/error.hpp"
#include "relaxflux/core/limiter.hpp"
#include "relaxflux/core/params.hpp"
#include "relaxflux/core/timestep.hpp"

using namespace relaxflux;

TEST_CASE("minmod3 picks the smallest same-sign slope") {
  CHECK(minmod3(2, 1, 3) == 1);
  CHECK(minmod3(-1, 2, 1) == 0);
  CHECK(minmod3(0, 5, 3) == 0);
  CHECK(minmod3(-2, -1, -3) == -1);
}

TEST_CASE("compute_dt") {
  const TimeControl tc{0.7, 10.0};
  const double dt = compute_dt(0.64, 1.0 / 64, std::nullopt, std::nullopt, tc);
  CHECK(dt == doctest::Approx(0.0170898).epsilon(1e-5));
  CHECK(std::ceil(10.0 / dt) == 586);

  CHECK(compute_dt(1.0, 1.0, std::nullopt, std::nullopt, TimeControl{0.5, 10.0}) == doctest::Approx(0.5));
  CHECK(compute_dt(2.0, 0.1, 2.0, 0.1, TimeControl{0.3, 10.0}) == doctest::Approx(0.015));
  CHECK(compute_dt(1.0, 1.0, std::nullopt, std::nullopt, TimeControl{0.5, 1.0}, 0.8) == doctest::Approx(0.2));
}

TEST_CASE("eig_real_3x3 on simple blocks") {
  const auto s = eig_real_3x3(4.0 * Mat3::Identity());
  for (int k = 0; k < 3; ++k) CHECK(s.values[k] == doctest::Approx(4.0));
  CHECK((s.vectors.cwiseAbs() - Mat3::Identity()).norm() < 1e-12);

  Mat3 D = Mat3::Zero();
  D.diagonal() << 9.0, 1.0, 4.0;
  const auto d = eig_real_3x3(D);
  CHECK(d.values[0] == doctest::Approx(1.0));
  CHECK(d.values[1] == doctest::Approx(4.0));
  CHECK(d.values[2] == doctest::Approx(9.0));

  Mat3 L;
  L << 2.0, 0.0, 0.0, 1.0, 3.0, 0.0, 0.5, -1.0, 5.0;
  const auto l = eig_real_3x3(L);
  for (int k = 0; k < 3; ++k) CHECK((L * l.vectors.col(k) - l.values[k] * l.vectors.col(k)).norm() < 1e-10);
}

TEST_CASE("block decomposition mirrors the block spectrum") {
  const auto waves = block_waves<3>(Mat3::Identity()).dense();
  for (int k = 0; k < 3; ++k) CHECK(waves.lambda[k] == doctest::Approx(-1.0));
  for (int k = 3; k < 6; ++k) CHECK(waves.lambda[k] == doctest::Approx(1.0));
  Mat<6> M = Mat<6>::Zero();
  M.topRightCorner<3, 3>() = Mat3::Identity();
  M.bottomLeftCorner<3, 3>() = Mat3::Identity();
  CHECK((waves.reconstruct() - M).norm() < 1e-12);

  const double mu = 0.01, eps = 1e-4, a = 0.5;
  Mat<1> K;
  K(0, 0) = mu / eps + a * a;
  const auto w1 = block_waves<1>(K).dense();
  CHECK(w1.lambda[1] == doctest::Approx(std::sqrt(mu / eps + a * a)));
  CHECK(w1.lambda[0] == doctest::Approx(-std::sqrt(mu / eps + a * a)));
}

TEST_CASE("non-positive block is rejected") {
  Mat3 D = Mat3::Zero();
  D.diagonal() << -1.0, 1.0, 2.0;
  try {
    block_waves<3>(D);
    FAIL("expected NonPositiveBlock");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveBlock);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(RelaxParams::scalar(0.0, 1.0, 0.01).validate(), SolverError);
  CHECK_THROWS_AS(RelaxParams::scalar(1.0, -1.0, 0.01).validate(), SolverError);
  CHECK_THROWS_AS((TimeControl{0.0, 1.0}).validate(), SolverError);
  const auto g = RelaxParams::gas(1e-4, 1.0, 0.01, 1.4, 0.72);
  CHECK(g.kappa() == doctest::Approx(1.4 * 0.01 / (0.4 * 0.72)));
}
