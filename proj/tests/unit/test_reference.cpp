#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "relaxflux/reference.hpp"

using namespace relaxflux;
namespace ref = relaxflux::reference;

TEST_CASE("Blasius profile") {
  const auto b = ref::blasius_profile();
  CHECK(b.fpp0 == doctest::Approx(0.332057).epsilon(1e-5));
  CHECK(b.sample(5.0).first == doctest::Approx(0.99).epsilon(0.005));
  double prev = -1.0;
  bool monotone = true;
  for (double fp : b.fp) {
    monotone = monotone && fp >= prev - 1e-12;
    prev = fp;
  }
  CHECK(monotone);
  CHECK(b.fp.back() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("error norms and observed orders") {
  const Grid1D g(0.0, 1.0, 10);
  std::vector<double> u(10);
  for (int j = 0; j < 10; ++j) u[j] = std::sin(g.center(j));
  const auto e = ref::error_norms(u, [](double x) { return std::sin(x); }, g);
  CHECK(e.l1 == 0.0);
  CHECK(e.linf == 0.0);
  CHECK(ref::observed_order(4e-5, 1e-5) == doctest::Approx(2.0));
  CHECK(ref::observed_order(4.019e-05, 1.017e-05) == doctest::Approx(1.983).epsilon(1e-3));
}

TEST_CASE("FD oracles keep constant states") {
  const std::vector<double> u0(16, 0.4);
  const auto u = ref::fd_oracle_burgers(u0, 0.01, 1.0 / 16, 0.1, [](double) { return 0.4; },
                                        [](double) { return 0.4; });
  for (double v : u) CHECK(v == doctest::Approx(0.4));

  const auto p = RelaxParams::gas(1.0, 0.0, 0.01, 1.4, 0.72);
  const std::vector<Vec3> w0(16, Vec3(1.0, 0.2, 2.6));
  const auto w = ref::fd_oracle_ns1(w0, p, 1.0 / 16, 0.05);
  for (const auto& v : w) CHECK((v - Vec3(1.0, 0.2, 2.6)).norm() < 1e-13);
}

TEST_CASE("manufactured solution") {
  const auto f = ref::mms_fields(0.25, 0.25, 0.0);
  CHECK(f.rho == doctest::Approx(1.0 + 0.2 * std::sin(M_PI * 0.5)));
  CHECK(f.u == 1.0);
  CHECK(f.v == 1.0);
  CHECK(f.p == 1.0);
  const auto p = RelaxParams::gas(1e-4, 1.2, 1e-3, 1.4, 0.72);
  const Vec4 s = ref::mms_forcing(0.3, 0.7, 0.2, p);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 0.0);
}

TEST_CASE("Ghia reference data") {
  const auto g = ref::load_ghia_reference(ref::data_path("ghia_1982.txt"));
  REQUIRE(g.u_vertical.count(400));
  REQUIRE(g.v_horizontal.count(1000));
  CHECK(g.u_vertical.at(400).abscissa.size() == 17);
  CHECK(g.v_horizontal.at(400).abscissa.size() == 17);
  CHECK(g.u_vertical.at(400).ordinate.back() == doctest::Approx(1.0));

  const auto path = (std::filesystem::temp_directory_path() / "relaxflux_bad_ghia.txt").string();
  {
    std::ofstream f(path);
    f << "block 400 U\n0.0 0.0\n0.5 abc\n";
  }
  try {
    ref::load_ghia_reference(path);
    FAIL("expected SchemaError");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::SchemaError);
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(ref::load_ghia_reference("/nonexistent/ghia.txt"), SolverError);
}
