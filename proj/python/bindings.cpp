#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relaxflux/app/config.hpp"
#include "relaxflux/app/problems.hpp"
#include "relaxflux/app/properties.hpp"
#include "relaxflux/core/error.hpp"
#include "relaxflux/reference.hpp"

namespace py = pybind11;
namespace app = relaxflux::app;
namespace ref = relaxflux::reference;
using relaxflux::Vec3;

namespace {

py::dict run_text(const std::string& text, const std::map<std::string, std::string>& overrides) {
  app::Config cfg = app::Config::parse(text, "<python>");
  for (const auto& [k, v] : overrides) cfg.set(k, v);
  app::RunResult r;
  {
    py::gil_scoped_release release;
    r = app::run(app::resolve(cfg));
  }
  py::dict out, metrics, tables;
  for (const auto& [k, v] : r.metrics) metrics[py::str(k)] = v;
  for (const auto& t : r.tables) {
    py::dict cols;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      py::list col;
      for (const auto& row : t.rows) col.append(row[c]);
      cols[py::str(t.columns[c])] = col;
    }
    tables[py::str(t.name)] = cols;
  }
  py::list levels;
  for (const auto& l : r.levels) {
    py::dict d;
    d["nx"] = l.nx;
    d["ny"] = l.ny;
    d["steps"] = l.steps;
    if (l.has_error) {
      d["l1"] = l.error.l1_mean();
      d["linf"] = l.error.linf;
    }
    levels.append(d);
  }
  out["metrics"] = metrics;
  out["tables"] = tables;
  out["levels"] = levels;
  out["files"] = r.files;
  return out;
}

}  // namespace

PYBIND11_MODULE(_relaxflux, m) {
  m.doc() = "Flux-relaxation solvers for viscous conservation laws";

  static py::exception<relaxflux::SolverError> solver_error(m, "SolverError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const relaxflux::SolverError& e) {
      py::set_error(solver_error, (std::string(relaxflux::to_string(e.kind())) + ": " + e.message()).c_str());
    }
  });

  m.def("burgers_exact", &ref::burgers_exact, py::arg("x"), py::arg("t"), py::arg("mu"));
  m.def(
      "euler_exact_riemann",
      [](std::array<double, 3> l, std::array<double, 3> r, double gamma, double xi) {
        const Vec3 q = ref::euler_exact_riemann(Vec3(l[0], l[1], l[2]), Vec3(r[0], r[1], r[2]), gamma, xi);
        return std::array<double, 3>{q[0], q[1], q[2]};
      },
      py::arg("left"), py::arg("right"), py::arg("gamma"), py::arg("xi"),
      "Primitive (rho, u, p) of the exact Euler Riemann solution at xi = x/t.");
  m.def(
      "euler_star_state",
      [](std::array<double, 3> l, std::array<double, 3> r, double gamma) {
        return ref::euler_star_state(Vec3(l[0], l[1], l[2]), Vec3(r[0], r[1], r[2]), gamma);
      },
      py::arg("left"), py::arg("right"), py::arg("gamma"));
  m.def(
      "blasius",
      [](double eta_max, int n_points) {
        const auto b = ref::blasius_profile(eta_max, n_points);
        py::dict d;
        d["eta"] = b.eta;
        d["f"] = b.f;
        d["fp"] = b.fp;
        d["fpp"] = b.fpp;
        d["fpp0"] = b.fpp0;
        return d;
      },
      py::arg("eta_max") = 10.0, py::arg("n_points") = 2001);
  m.def("observed_order", py::overload_cast<double, double>(&ref::observed_order), py::arg("e_coarse"),
        py::arg("e_fine"));
  m.def("run_config", &run_text, py::arg("text"), py::arg("overrides") = std::map<std::string, std::string>{},
        "Runs a configuration given as text; returns metrics, tables and per-level errors.");
  m.def("property_suite", [](std::uint64_t seed) {
    py::list out;
    for (const auto& p : app::property_suite(seed)) {
      py::dict d;
      d["name"] = p.name;
      d["passed"] = p.passed;
      d["measured"] = p.measured;
      d["bound"] = p.bound;
      d["detail"] = p.detail;
      out.append(d);
    }
    return out;
  }, py::arg("seed") = 1);
}
