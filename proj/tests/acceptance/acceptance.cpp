// Acceptance criteria. Prints one PASS/FAIL/SKIP line per criterion, with
// indented detail lines. Exit status is nonzero when any criterion fails.
//
//   relaxflux_acceptance <configs-dir> [--slow] [--only N[,N...]]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relaxflux/app/config.hpp"
#include "relaxflux/app/problems.hpp"
#include "relaxflux/app/properties.hpp"
#include "relaxflux/core/error.hpp"
#include "relaxflux/reference.hpp"

namespace app = relaxflux::app;

namespace {

std::string g_configs;
bool g_slow = false;

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) verdict = Verdict::Fail;
  }
  void note(const std::string& what) { lines.push_back("     " + what); }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

app::RunResult run_config(const std::string& name, const std::vector<std::pair<std::string, std::string>>& set = {}) {
  app::Config cfg = app::Config::load(g_configs + "/" + name);
  for (const auto& [k, v] : set) cfg.set(k, v);
  cfg.erase("output.dir");
  return app::run(app::resolve(cfg));
}

double rel(double measured, double expected) { return std::abs(measured - expected) / std::abs(expected); }

std::vector<double> l1_orders(const std::vector<app::LevelResult>& levels) {
  std::vector<double> out;
  for (std::size_t k = 1; k < levels.size(); ++k)
    out.push_back(relaxflux::reference::observed_order(levels[k - 1].error.l1_mean(), levels[k].error.l1_mean()));
  return out;
}

Outcome criterion1() {
  Outcome o;
  const auto r = run_config("burgers_k1.cfg");
  const double l1[] = {4.019e-05, 1.017e-05, 2.557e-06, 6.412e-07};
  const double ord[] = {1.983, 1.991, 1.996};
  const long steps[] = {586, 2341, 9363, 37450};
  const auto orders = l1_orders(r.levels);
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const auto& lv = r.levels[k];
    o.check(rel(lv.error.l1_mean(), l1[k]) <= 0.05,
            "N=" + std::to_string(lv.nx) + fmt(" L1 %.4e vs %.4e (rel %.3f, tol 0.05)", lv.error.l1_mean(), l1[k],
                                               rel(lv.error.l1_mean(), l1[k])));
    o.check(std::abs(lv.steps - steps[k]) <= 2,
            "N=" + std::to_string(lv.nx) + " Nstep " + std::to_string(lv.steps) + " vs " + std::to_string(steps[k]));
  }
  for (std::size_t k = 0; k < orders.size(); ++k)
    o.check(std::abs(orders[k] - ord[k]) <= 0.05, fmt("L1 order %.3f vs %.3f (tol 0.05)", orders[k], ord[k]));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto r = run_config("burgers_k09.cfg");
  const double ord[] = {1.778, 1.786, 1.791};
  const auto orders = l1_orders(r.levels);
  for (std::size_t k = 0; k < orders.size(); ++k)
    o.check(std::abs(orders[k] - ord[k]) <= 0.05,
            "N=" + std::to_string(r.levels[k + 1].nx) + fmt(" L1 order %.3f vs %.3f (tol 0.05)", orders[k], ord[k]));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto r = run_config("mms2d.cfg");
  const double table[] = {3.797e-03, 8.312e-04, 1.993e-04, 5.033e-05};
  const auto orders = l1_orders(r.levels);
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const double e = r.levels[k].error.l1_mean(), ratio = e / table[k];
    o.check(ratio >= 0.5 && ratio <= 2.0, "N=" + std::to_string(r.levels[k].nx) +
                                              fmt(" L1 %.4e vs %.4e (ratio %.3f, within factor 2)", e, table[k], ratio));
  }
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const std::string what = "N=" + std::to_string(r.levels[k + 1].nx) + fmt(" L1 order %.3f", orders[k]);
    if (k + 2 >= orders.size()) {
      o.check(orders[k] >= 1.95, what + " (>= 1.95)");
    } else {
      o.note(what);
    }
  }
  if (g_slow) {
    const auto f = run_config("mms2d_fixed_eps.cfg");
    const auto fo = l1_orders(f.levels);
    for (std::size_t k = 0; k + 1 < fo.size(); ++k)
      o.note("eps=mu/100 N=" + std::to_string(f.levels[k + 1].nx) + fmt(" L1 order %.3f", fo[k]));
    o.check(fo.back() < 1.7, fmt("eps=mu/100 N=256 L1 order %.3f (< 1.7)", fo.back()));
  } else {
    o.note("eps=mu/100 N=256 order check runs with the slow suite");
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::vector<double> l1;
  for (const char* mu : {"2e-3", "5e-4", "5e-5"}) {
    const auto r = run_config("sod.cfg", {{"physics.mu", mu}});
    l1.push_back(r.metric("l1_rho"));
    const double over = r.metric("overshoot");
    o.check(over <= 0.01, std::string("mu=") + mu +
                              fmt(" L1(rho) %.4e, overshoot %.4f of post-shock rho %.5f (<= 0.01)", l1.back(), over,
                                  r.metric("rho_post_shock")));
  }
  o.check(l1[0] > l1[1] && l1[1] > l1[2], "L1(rho) strictly decreasing as mu decreases");
  return o;
}

Outcome criterion5() {
  Outcome o;
  if (!g_slow) {
    o.verdict = Verdict::Skip;
    o.note("slow: viscous shock tube at 400x200 to t=1");
    return o;
  }
  const auto r = run_config("viscous_shock_tube.cfg");
  const double h = r.metric("vortex_height");
  o.check(std::isfinite(h) && std::abs(h - 0.160) <= 0.01, fmt("vortex height %.4f vs 0.160 (tol 0.01)", h));
  return o;
}

Outcome criterion6() {
  Outcome o;
  if (!g_slow) {
    o.verdict = Verdict::Skip;
    o.note("slow: cavity Re=400 at 85x85 to steady state");
    return o;
  }
  const auto r = run_config("cavity_re400.cfg");
  o.check(r.metric("ghia_u_linf") <= 0.05, fmt("U centreline Linf %.4f (<= 0.05)", r.metric("ghia_u_linf")));
  o.check(r.metric("ghia_v_linf") <= 0.05, fmt("V centreline Linf %.4f (<= 0.05)", r.metric("ghia_v_linf")));
  o.check(r.metric("residual_monotone") == 1.0,
          fmt("velocity-change residual non-increasing over the last half (final %.3e)", r.metric("final_residual")));
  return o;
}

void flat_plate_checks(Outcome& o, const app::RunResult& r, const std::string& label) {
  int stations = 0;
  for (const auto& [k, v] : r.metrics) {
    if (k.rfind("blasius_linf_x", 0) != 0) continue;
    ++stations;
    const std::string x = k.substr(std::string("blasius_linf_x").size());
    o.check(v <= 0.07, label + " x=" + fmt("%.1f", r.metric("station_x" + x)) + fmt(" U/Uinf Linf %.4f (<= 0.07)", v));
  }
  o.check(stations >= 2, label + " at least two stations");
}

Outcome criterion7() {
  Outcome o;
  flat_plate_checks(o, run_config("flat_plate_desk.cfg"), "Re=1e4 60x30");
  if (g_slow) {
    flat_plate_checks(o, run_config("flat_plate.cfg"), "Re=1e5 90x45");
  } else {
    o.note("Re=1e5 90x45 run is part of the slow suite");
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const auto& p : app::property_suite(20240901))
    o.check(p.passed, p.name + fmt(" measured %.3e bound %.3e", p.measured, p.bound));
  return o;
}

Outcome criterion9() {
  Outcome o;
  const std::vector<double> eps{1e-3, 1e-4, 1e-5, 1e-6};
  const auto coarse = app::ap_sweep(0.4, eps, 1.0);
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const auto& p = coarse[k];
    const std::string what = fmt("alpha=0.4 eps=%.0e N=%.0f L1 %.4e", p.epsilon, p.n_cells, p.l1);
    if (k == 0) {
      o.note(what);
    } else {
      o.check(p.l1 < coarse[k - 1].l1, what + " (decreasing)");
    }
  }
  o.check(coarse.back().l1 < 0.1 * coarse.front().l1, "alpha=0.4 error reduced tenfold along the sequence");
  for (const auto& p : app::ap_sweep(0.1, eps, 1.0))
    o.note(fmt("alpha=0.1 eps=%.0e N=%.0f L1 %.4e (not asserted)", p.epsilon, p.n_cells, p.l1));
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto r = run_config("sod.cfg");
  double eta0 = std::abs(r.diagnostics.front().entropy), worst = 0.0;
  for (std::size_t k = 1; k < r.diagnostics.size(); ++k)
    worst = std::max(worst, r.diagnostics[k].entropy - r.diagnostics[k - 1].entropy);
  o.check(worst <= 1e-6 * eta0, fmt("largest per-step rise %.3e (<= %.3e)", worst, 1e-6 * eta0));
  const double change = r.diagnostics.back().entropy - r.diagnostics.front().entropy;
  o.check(change <= 0.0, fmt("end-to-start change %.4e (<= 0)", change));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <configs-dir> [--slow] [--only N[,N...]]\n", argv[0]);
    return 2;
  }
  g_configs = argv[1];
  std::set<int> only;
  for (int k = 2; k < argc; ++k) {
    const std::string a = argv[k];
    if (a == "--slow") {
      g_slow = true;
    } else if (a == "--only" && k + 1 < argc) {
      std::stringstream ss(argv[++k]);
      std::string item;
      while (std::getline(ss, item, ',')) only.insert(std::stoi(item));
    } else {
      std::fprintf(stderr, "unknown argument %s\n", a.c_str());
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 Burgers IBVP k=1 errors, orders, step counts", criterion1},
      {"2 Burgers IBVP k=0.9 orders", criterion2},
      {"3 manufactured solution orders and errors", criterion3},
      {"4 Sod family convergence and overshoot", criterion4},
      {"5 viscous shock tube vortex height", criterion5},
      {"6 cavity Re=400 centrelines and steady residual", criterion6},
      {"7 flat plate against Blasius", criterion7},
      {"8 property suites", criterion8},
      {"9 asymptotic-preserving sweep", criterion9},
      {"10 entropy diagnostic on Sod", criterion10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!only.empty() && !only.count(static_cast<int>(k + 1))) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.verdict = Verdict::Fail;
      o.lines.push_back(std::string("FAIL error: ") + e.what());
    }
    const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    std::printf("%s criterion %s\n", tag, criteria[k].first.c_str());
    for (const auto& l : o.lines) std::printf("    %s\n", l.c_str());
    std::fflush(stdout);
    if (o.verdict == Verdict::Fail) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
