#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "relaxflux/app/config.hpp"
#include "relaxflux/app/io.hpp"
#include "relaxflux/app/problems.hpp"

using namespace relaxflux;
namespace app = relaxflux::app;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const SolverError& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}
}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = app::Config::parse(
      "# comment\n[problem]\nname = burgers_ibvp\n[grid]\nnx = 32, 64\n[physics]\nmu = 0.02\n"
      "epsilon = (dx^2/mu)^0.9\n[time]\ncfl = 0.5\nt_end = 0.5\n");
  const auto rc = app::resolve(cfg);
  CHECK(rc.problem == app::Problem::BurgersIbvp);
  REQUIRE(rc.nx.size() == 2);
  CHECK(rc.nx[1] == 64);
  CHECK(rc.mu == doctest::Approx(0.02));
  CHECK(rc.time.cfl == doctest::Approx(0.5));
  const double dx = 1.0 / 32;
  CHECK(rc.epsilon.resolve(dx, 0.02) == doctest::Approx(std::pow(dx * dx / 0.02, 0.9)));
}

TEST_CASE("config errors") {
  CHECK(kind_of([] { app::resolve(app::Config::parse("[problem]\nname = nonsense\n")); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { app::resolve(app::Config::parse("[problem]\nname = sod\n[grid]\nbogus = 1\n")); }) ==
        ErrorKind::ConfigError);
  CHECK(kind_of([] { app::resolve(app::Config::parse("[problem]\nname = sod\n[scheme]\nname = upwind1\n")); }) ==
        ErrorKind::ConfigError);
  CHECK(kind_of([] { app::resolve(app::Config::parse("[grid]\nnx = 0\n[problem]\nname = sod\n")); }) ==
        ErrorKind::ConfigError);
  CHECK(kind_of([] { app::Config::parse("no section\n"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { app::Config::load("/nonexistent/run.cfg"); }) == ErrorKind::MissingResource);
}

TEST_CASE("small Burgers run produces an error table") {
  auto cfg = app::Config::parse("[problem]\nname = burgers_ibvp\n[grid]\nnx = 16, 32\n[time]\nt_end = 0.5\n");
  const auto r = app::run(app::resolve(cfg));
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[0].has_error);
  const auto t = app::error_table(r.levels);
  REQUIRE(t.rows.size() == 2);
  CHECK(std::isnan(t.rows[0][3]));
  CHECK(t.rows[1][3] > 1.5);
}

TEST_CASE("vortex height") {
  app::FlowField2D f;
  f.grid = Grid2D{Grid1D(0.0, 1.0, 10), Grid1D(0.0, 1.0, 10)};
  f.rho.assign(100, 1.0);
  f.u.assign(100, 1.0);
  f.v.assign(100, 0.0);
  f.p.assign(100, 1.0);
  CHECK(kind_of([&] { app::vortex_height(f); }) == ErrorKind::NoVortexFound);

  // Stream function sin^2(pi x) y (y - 0.4): one cell of recirculation below y = 0.4.
  const int n = 41;
  f.grid = Grid2D{Grid1D(0.0, 1.0, n), Grid1D(0.0, 1.0, n)};
  f.rho.assign(n * n, 1.0);
  f.u.assign(n * n, 0.0);
  f.v.assign(n * n, 0.0);
  f.p.assign(n * n, 1.0);
  auto stream = [](double x, double y) { return std::pow(std::sin(M_PI * x), 2) * y * (y - 0.4); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double x = f.grid.x.center(i);
      f.u[i + j * n] = (stream(x, f.grid.y.face(j)) - stream(x, f.grid.y.face(j) - f.grid.dy())) / f.grid.dy();
    }
  const auto v = app::vortex_height(f);
  CHECK(v.core_x == doctest::Approx(0.5).epsilon(0.05));
  CHECK(v.height == doctest::Approx(0.4).epsilon(0.07));
  CHECK(v.core_psi < 0.0);
}

TEST_CASE("field dump round trip and schema errors") {
  const auto dir = std::filesystem::temp_directory_path() / "relaxflux_unit";
  std::filesystem::create_directories(dir);
  const auto good = (dir / "good.csv").string();
  {
    std::ofstream o(good);
    o << "x,y,rho,u,v,p\n";
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 4; ++i) o << 0.125 + 0.25 * i << "," << 0.5 + j << ",1," << i << "," << j << ",1\n";
  }
  const auto f = app::read_field_dump(good);
  CHECK(f.grid.nx() == 4);
  CHECK(f.grid.ny() == 3);
  CHECK(f.at(f.u, 3, 1) == 3.0);
  CHECK(f.at(f.v, 3, 2) == 2.0);

  const auto bad = (dir / "bad.csv").string();
  {
    std::ofstream o(bad);
    o << "x,y,rho,u,v\n0,0,1,1,1\n";
  }
  CHECK(kind_of([&] { app::read_field_dump(bad); }) == ErrorKind::SchemaError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("outputs do not depend on the worker count") {
  const auto base = std::filesystem::temp_directory_path() / "relaxflux_det";
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  for (int threads : {1, 3}) {
    auto cfg = app::Config::parse("[problem]\nname = mms2d\n[grid]\nnx = 16\n[time]\nt_end = 0.05\n");
    cfg.set("output.dir", (base / std::to_string(threads)).string());
    cfg.set("run.threads", std::to_string(threads));
    cfg.set("output.diagnostics_every", "1");
    app::run(app::resolve(cfg));
  }
  for (const char* name : {"field_n16_final.csv", "diagnostics.csv", "summary.csv", "errors.csv"})
    CHECK(slurp(base / "1" / name) == slurp(base / "3" / name));
  CHECK_FALSE(slurp(base / "1" / "field_n16_final.csv").empty());
  std::filesystem::remove_all(base);
}
