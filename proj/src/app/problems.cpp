#include "relaxflux/app/problems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "relaxflux/app/io.hpp"
#include "relaxflux/core/parallel.hpp"
#include "relaxflux/core/timestep.hpp"
#include "relaxflux/gas.hpp"

namespace relaxflux::app {

namespace ref = relaxflux::reference;

double RunResult::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw SolverError(ErrorKind::InvalidArgument, "no metric named " + name);
}

bool RunResult::has_metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return true;
  return false;
}

Table error_table(const std::vector<LevelResult>& levels) {
  Table t{"errors", {"N", "Nstep", "L1", "L1_order", "Linf", "Linf_order", "L1_integral"}, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& e = levels[k].error;
    double o1 = nan, oi = nan;
    if (k > 0) {
      o1 = ref::observed_order(levels[k - 1].error.l1_mean(), e.l1_mean());
      oi = ref::observed_order(levels[k - 1].error.linf, e.linf);
    }
    t.rows.push_back({static_cast<double>(levels[k].nx), static_cast<double>(levels[k].steps), e.l1_mean(), o1,
                      e.linf, oi, e.l1});
  }
  return t;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class F>
void at_step(long step, F&& f) {
  try {
    f();
  } catch (const SolverError& e) {
    if (e.context().step) throw;
    throw e.with_step(step);
  }
}

void check_budget(long steps, const TimeControl& tc) {
  if (steps >= tc.max_steps) {
    throw SolverError(ErrorKind::ConfigError, "time.max_steps reached before t_end");
  }
}

bool finished(double t, const TimeControl& tc) { return t >= tc.t_end - 1e-12 * std::max(1.0, tc.t_end); }

// Output naming and file bookkeeping for one run.
class Output {
 public:
  Output(const RunConfig& c, RunResult& r) : cfg_(c), result_(r) {
    if (!c.output.dir.empty()) ensure_directory(c.output.dir);
  }
  bool on() const { return !cfg_.output.dir.empty(); }
  std::string path(const std::string& name) {
    const std::string p = cfg_.output.dir + "/" + name;
    result_.files.push_back(p);
    return p;
  }
  std::string suffix(int nx) const { return cfg_.nx.size() > 1 ? "_n" + std::to_string(nx) : ""; }
  bool dump_now(long step) const { return on() && cfg_.output.dump_every > 0 && step % cfg_.output.dump_every == 0; }
  bool diag_now(long step) const { return step % cfg_.output.diagnostics_every == 0; }

 private:
  const RunConfig& cfg_;
  RunResult& result_;
};

void finish_level(Output& out, RunResult& r, int nx) {
  if (out.on()) write_diagnostics_csv(out.path("diagnostics" + out.suffix(nx) + ".csv"), r.diagnostics);
}

void add_table(Output& out, RunResult& r, Table t, int nx) {
  t.name += out.suffix(nx);
  if (out.on()) write_table_csv(out.path(t.name + ".csv"), t);
  r.tables.push_back(std::move(t));
}

// ---------------------------------------------------------------------------
// Burgers IBVP

double burgers_initial_slope(double x, double mu) {
  const double s = std::sin(M_PI * x), c = std::cos(M_PI * x), den = 2.0 + c;
  return 2.0 * mu * M_PI * M_PI * (c * den + s * s) / (den * den);
}

LevelResult run_burgers(const RunConfig& c, int n, Output& out, RunResult& r) {
  const Grid1D grid(c.x_min, c.x_max, n);
  const RelaxParams p = c.params(grid.dx());
  const ScalarLaw law = ScalarLaw::burgers();
  const double mu = c.mu;
  const Boundary1D bc{BoundarySpec::dirichlet([mu, x = c.x_min](double t) { return ref::burgers_exact(x, t, mu); }),
                      BoundarySpec::dirichlet([mu, x = c.x_max](double t) { return ref::burgers_exact(x, t, mu); })};
  ScalarRelaxState s = make_scalar_state(
      grid, [mu](double x) { return ref::burgers_exact(x, 0.0, mu); },
      [mu](double x) { return burgers_initial_slope(x, mu); }, p, law, bc);

  const auto t0 = Clock::now();
  r.diagnostics.clear();
  auto record = [&](double dt, double lambda, double residual) {
    DiagnosticsRow row;
    row.step = s.steps;
    row.t = s.t;
    row.dt = dt;
    row.lambda_max = lambda;
    row.mass = total_mass(s);
    row.residual = residual;
    r.diagnostics.push_back(row);
  };
  record(0.0, max_wave_speed(s, p, law), 0.0);
  while (!finished(s.t, c.time)) {
    check_budget(s.steps, c.time);
    const double lambda = max_wave_speed(s, p, law);
    const double dt = compute_dt(lambda, grid.dx(), std::nullopt, std::nullopt, c.time, s.t);
    const bool diag = out.diag_now(s.steps + 1);
    Field1D<Vec2> before;
    if (diag) before = s.U;
    at_step(s.steps, [&] { step_scalar(c.scheme, s, p, law, dt, bc, c.limiter); });
    if (diag) {
      double res = 0.0;
      for (int j = 0; j < n; ++j) res = std::max(res, (s.U(j) - before(j)).cwiseAbs().maxCoeff() / dt);
      record(dt, lambda, res);
    }
    if (out.dump_now(s.steps)) {
      write_scalar_dump(out.path("field_n" + std::to_string(n) + "_step" + std::to_string(s.steps) + ".csv"), s);
    }
  }
  LevelResult level{n, 0, s.steps, seconds_since(t0), true, {}};
  std::vector<double> u(n);
  for (int j = 0; j < n; ++j) u[j] = s.U(j)[0];
  level.error = ref::error_norms(u, [&](double x) { return ref::burgers_exact(x, s.t, mu); }, grid);
  if (out.on()) write_scalar_dump(out.path("field_n" + std::to_string(n) + "_final.csv"), s);
  finish_level(out, r, n);
  r.metrics.push_back({"relaxation_residual", relaxation_residual(s, p, law)});
  return level;
}

// ---------------------------------------------------------------------------
// 1-D gas Riemann problems

BoundarySpec boundary_by_name(const std::string& name) {
  if (name == "symmetric") return BoundarySpec::symmetric();
  if (name == "periodic") return BoundarySpec::periodic();
  if (name == "wall_adiabatic") return BoundarySpec::wall_adiabatic();
  return BoundarySpec::extrapolation();
}

LevelResult run_riemann_1d(const RunConfig& c, int n, Output& out, RunResult& r) {
  const Grid1D grid(c.x_min, c.x_max, n);
  const RelaxParams p = c.params(grid.dx());
  const double gamma = c.gamma;
  const Boundary1D bc = c.problem == Problem::Custom
                            ? Boundary1D{boundary_by_name(c.boundary_left), boundary_by_name(c.boundary_right)}
                            : Boundary1D::both(BoundarySpec::extrapolation());
  const Vec3 left(c.left_state[0], c.left_state[1], c.left_state[2]);
  const Vec3 right(c.right_state[0], c.right_state[1], c.right_state[2]);
  GasState1D s = make_gas_state_1d(
      grid, [&](double x) { return x < c.interface ? left : right; }, p, bc, c.limiter);

  const auto t0 = Clock::now();
  r.diagnostics.clear();
  auto record = [&](double dt, double lambda, double residual) {
    const Vec3 tot = conserved_totals(s);
    DiagnosticsRow row;
    row.step = s.steps;
    row.t = s.t;
    row.dt = dt;
    row.lambda_max = lambda;
    row.mass = tot[0];
    row.momentum_x = tot[1];
    row.energy = tot[2];
    row.entropy = entropy_total(s, gamma);
    row.residual = residual;
    r.diagnostics.push_back(row);
  };
  record(0.0, max_wave_speed_ns1(s, p), 0.0);
  while (!finished(s.t, c.time)) {
    check_budget(s.steps, c.time);
    const double lambda = max_wave_speed_ns1(s, p);
    const double dt = compute_dt(lambda, grid.dx(), std::nullopt, std::nullopt, c.time, s.t);
    const bool diag = out.diag_now(s.steps + 1);
    Field1D<Vec6> before;
    if (diag) before = s.U;
    at_step(s.steps, [&] { imex_grp_step_ns1(s, p, dt, bc, c.limiter); });
    if (diag) {
      double res = 0.0;
      for (int j = 0; j < n; ++j) res = std::max(res, (s.U(j) - before(j)).cwiseAbs().maxCoeff() / dt);
      record(dt, lambda, res);
    }
    if (out.dump_now(s.steps)) {
      write_gas1d_dump(out.path("field_n" + std::to_string(n) + "_step" + std::to_string(s.steps) + ".csv"), s, gamma);
    }
  }
  LevelResult level{n, 0, s.steps, seconds_since(t0), false, {}};
  if (out.on()) write_gas1d_dump(out.path("field_n" + std::to_string(n) + "_final.csv"), s, gamma);
  finish_level(out, r, n);

  // Entropy history.
  double max_rise = 0.0;
  for (std::size_t k = 1; k < r.diagnostics.size(); ++k) {
    const double scale = std::abs(r.diagnostics[k - 1].entropy);
    max_rise = std::max(max_rise, (r.diagnostics[k].entropy - r.diagnostics[k - 1].entropy) / scale);
  }
  r.metrics.push_back({"entropy_max_step_rise", max_rise});
  r.metrics.push_back({"entropy_change", r.diagnostics.back().entropy - r.diagnostics.front().entropy});

  // Comparison with the inviscid exact solution.
  Table profile{"profile", {"x", "rho", "u", "p", "rho_exact", "u_exact", "p_exact"}, {}};
  try {
    const auto [p_star, u_star] = ref::euler_star_state(left, right, gamma);
    double l1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = grid.center(j);
      const Vec3 q = prim_from_cons(s.U(j).head<3>(), gamma);
      const Vec3 e = ref::euler_exact_riemann(left, right, gamma, (x - c.interface) / s.t);
      l1 += std::abs(q[0] - e[0]) * grid.dx();
      profile.rows.push_back({x, q[0], q[1], q[0] * q[2], e[0], e[1], e[2]});
    }
    r.metrics.push_back({"l1_rho", l1});
    // Density overshoot past the post-shock plateau, between the midpoint of
    // contact and shock and a few cells beyond the shock.
    if (right[0] < left[0] && u_star > 0.0) {
      const double rho_ps = ref::euler_exact_riemann(left, right, gamma, u_star + 1e-9)[0];
      double x_shock = c.interface;
      for (int k = 0; k <= 4000; ++k) {
        const double xi = u_star + k * 1e-3;
        if (std::abs(ref::euler_exact_riemann(left, right, gamma, xi)[0] - rho_ps) > 1e-12) break;
        x_shock = c.interface + xi * s.t;
      }
      const double x_contact = c.interface + u_star * s.t;
      const double lo = 0.5 * (x_contact + x_shock), hi = x_shock + 5.0 * grid.dx();
      double worst = 0.0;
      for (int j = 0; j < n; ++j) {
        const double x = grid.center(j);
        if (x >= lo && x <= hi) worst = std::max(worst, (s.U(j)[0] - rho_ps) / rho_ps);
      }
      r.metrics.push_back({"rho_post_shock", rho_ps});
      r.metrics.push_back({"overshoot", worst});
    }
  } catch (const SolverError& e) {
    if (e.kind() != ErrorKind::VacuumFormation) throw;
    profile.columns.resize(4);
    for (int j = 0; j < n; ++j) {
      const Vec3 q = prim_from_cons(s.U(j).head<3>(), gamma);
      profile.rows.push_back({grid.center(j), q[0], q[1], q[0] * q[2]});
    }
  }
  add_table(out, r, std::move(profile), n);
  return level;
}

// ---------------------------------------------------------------------------
// 2-D problems

double entropy_total_2d(const GasState2D& s, double gamma) {
  double sum = 0.0;
  for (int j = 0; j < s.grid.ny(); ++j)
    for (int i = 0; i < s.grid.nx(); ++i) sum += gas::entropy_density<2>(s.U(i, j).head<4>(), gamma);
  return sum * s.grid.cell_area();
}

struct Setup2D {
  Boundary2D bc;
  std::function<Vec4(double, double)> initial;
  Forcing2D forcing;
};

Setup2D setup_2d(const RunConfig& c, const RelaxParams& p) {
  Setup2D su;
  const double gamma = c.gamma;
  switch (c.problem) {
    case Problem::Mms2d:
      su.bc = Boundary2D::all(BoundarySpec::periodic());
      su.initial = [](double x, double y) {
        const auto f = ref::mms_fields(x, y, 0.0);
        return Vec4(f.rho, f.u, f.v, f.p);
      };
      su.forcing = [p](double x, double y, double t) { return ref::mms_forcing(x, y, t, p); };
      break;
    case Problem::Cavity: {
      const double Tb = c.lid_speed * c.lid_speed / (gamma * c.mach * c.mach);
      const auto wall = BoundarySpec::wall_isothermal(Tb);
      su.bc = Boundary2D{wall, wall, wall, BoundarySpec::moving_wall(c.lid_speed, Tb)};
      su.initial = [Tb](double, double) { return Vec4(1.0, 0.0, 0.0, Tb); };
      break;
    }
    case Problem::FlatPlate: {
      const double p_inf = 1.0 / (gamma * c.mach * c.mach);
      EdgeBoundary bottom(BoundarySpec::symmetric());
      bottom.then_from(0.0, BoundarySpec::wall_adiabatic());
      su.bc = Boundary2D{BoundarySpec::inflow({1.0, 1.0, 0.0, p_inf}), BoundarySpec::extrapolation(), bottom,
                         BoundarySpec::extrapolation()};
      su.initial = [p_inf](double, double) { return Vec4(1.0, 1.0, 0.0, p_inf); };
      break;
    }
    case Problem::ViscousShockTube: {
      const auto wall = BoundarySpec::wall_adiabatic();
      su.bc = Boundary2D{wall, wall, wall, BoundarySpec::symmetric()};
      su.initial = [gamma](double x, double) {
        const double rho = x < 0.5 ? 120.0 : 1.2;
        return Vec4(rho, 0.0, 0.0, rho / gamma);
      };
      break;
    }
    default: throw SolverError(ErrorKind::ConfigError, "not a 2-D problem");
  }
  return su;
}

// Linear interpolation of samples (xs increasing) at x.
double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
  return (1.0 - w) * ys[k - 1] + w * ys[k];
}

void cavity_outputs(const RunConfig& c, const FlowField2D& f, Output& out, RunResult& r, int nx) {
  const Grid2D& g = f.grid;
  const double U = c.lid_speed;
  // U(y) on x = 0.5 and V(x) on y = 0.5, with the wall values at the ends.
  std::vector<double> ys{g.y.x_min()}, us{0.0}, xs{g.x.x_min()}, vs{0.0};
  const double xm = 0.5 * (g.x.x_min() + g.x.x_max()), ym = 0.5 * (g.y.x_min() + g.y.x_max());
  const double fi = (xm - g.x.x_min()) / g.dx() - 0.5, fj = (ym - g.y.x_min()) / g.dy() - 0.5;
  const int i0 = std::clamp(static_cast<int>(std::floor(fi)), 0, g.nx() - 2);
  const int j0 = std::clamp(static_cast<int>(std::floor(fj)), 0, g.ny() - 2);
  const double wi = fi - i0, wj = fj - j0;
  for (int j = 0; j < g.ny(); ++j) {
    ys.push_back(g.y.center(j));
    us.push_back(((1.0 - wi) * f.at(f.u, i0, j) + wi * f.at(f.u, i0 + 1, j)) / U);
  }
  for (int i = 0; i < g.nx(); ++i) {
    xs.push_back(g.x.center(i));
    vs.push_back(((1.0 - wj) * f.at(f.v, i, j0) + wj * f.at(f.v, i, j0 + 1)) / U);
  }
  ys.push_back(g.y.x_max());
  us.push_back(1.0);
  xs.push_back(g.x.x_max());
  vs.push_back(0.0);
  Table tu{"centerline_u", {"y", "U"}, {}}, tv{"centerline_v", {"x", "V"}, {}};
  for (std::size_t k = 0; k < ys.size(); ++k) tu.rows.push_back({ys[k], us[k]});
  for (std::size_t k = 0; k < xs.size(); ++k) tv.rows.push_back({xs[k], vs[k]});
  add_table(out, r, std::move(tu), nx);
  add_table(out, r, std::move(tv), nx);

  const auto ghia = ref::load_ghia_reference(ref::data_path("ghia_1982.txt"));
  const auto iu = ghia.u_vertical.find(c.reynolds_ghia);
  const auto iv = ghia.v_horizontal.find(c.reynolds_ghia);
  if (iu == ghia.u_vertical.end() || iv == ghia.v_horizontal.end()) {
    throw SolverError(ErrorKind::MissingResource,
                      "no reference block for Re = " + std::to_string(c.reynolds_ghia));
  }
  Table cmp{"ghia_comparison", {"curve", "coordinate", "reference", "computed"}, {}};
  double eu = 0.0, ev = 0.0;
  for (std::size_t k = 0; k < iu->second.abscissa.size(); ++k) {
    const double y = iu->second.abscissa[k], val = interpolate(ys, us, y);
    eu = std::max(eu, std::abs(val - iu->second.ordinate[k]));
    cmp.rows.push_back({0.0, y, iu->second.ordinate[k], val});
  }
  for (std::size_t k = 0; k < iv->second.abscissa.size(); ++k) {
    const double x = iv->second.abscissa[k], val = interpolate(xs, vs, x);
    ev = std::max(ev, std::abs(val - iv->second.ordinate[k]));
    cmp.rows.push_back({1.0, x, iv->second.ordinate[k], val});
  }
  add_table(out, r, std::move(cmp), nx);
  r.metrics.push_back({"ghia_u_linf", eu});
  r.metrics.push_back({"ghia_v_linf", ev});
}

void flat_plate_outputs(const RunConfig& c, const FlowField2D& f, Output& out, RunResult& r, int nx) {
  const Grid2D& g = f.grid;
  const auto blasius = ref::blasius_profile(10.0, 4001);
  const double re = 1.0 / c.mu;  // per unit length, rho = U = 1
  for (double station : c.stations) {
    int i = std::clamp(static_cast<int>(std::floor((station - g.x.x_min()) / g.dx())), 0, g.nx() - 1);
    const double x = g.x.center(i);
    if (!(x > 0.0)) throw SolverError(ErrorKind::ConfigError, "flat-plate station must lie on the plate");
    const double rex = re * x;
    Table t{"profile_x" + std::to_string(static_cast<long>(std::lround(station))),
            {"y", "eta", "U", "U_blasius", "V_scaled", "V_scaled_blasius"}, {}};
    double worst = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
      const double y = g.y.center(j) - g.y.x_min();
      const double eta = y / x * std::sqrt(rex);
      const auto [fp, fv] = blasius.sample(eta);
      const double U = f.at(f.u, i, j), V = f.at(f.v, i, j);
      t.rows.push_back({y, eta, U, fp, V * std::sqrt(rex), 0.5 * (eta * fp - fv)});
      if (eta >= 0.5 && eta <= 6.0) worst = std::max(worst, std::abs(U - fp));
    }
    r.metrics.push_back({"blasius_linf_x" + std::to_string(static_cast<long>(std::lround(station))), worst});
    r.metrics.push_back({"station_x" + std::to_string(static_cast<long>(std::lround(station))), x});
    add_table(out, r, std::move(t), nx);
  }
}

LevelResult run_2d(const RunConfig& c, int nx, int ny, Output& out, RunResult& r) {
  const Grid2D grid{Grid1D(c.x_min, c.x_max, nx), Grid1D(c.y_min, c.y_max, ny)};
  const RelaxParams p = c.params(grid.dx());
  const double gamma = c.gamma;
  const Setup2D su = setup_2d(c, p);
  GasState2D s = make_gas_state_2d(grid, su.initial, p, su.bc, c.limiter);
  const bool steady = c.problem == Problem::Cavity || c.problem == Problem::FlatPlate;

  const auto t0 = Clock::now();
  r.diagnostics.clear();
  auto record = [&](double dt, double lambda, double residual) {
    const Vec4 tot = conserved_totals(s);
    DiagnosticsRow row;
    row.step = s.steps;
    row.t = s.t;
    row.dt = dt;
    row.lambda_max = lambda;
    row.mass = tot[0];
    row.momentum_x = tot[1];
    row.momentum_y = tot[2];
    row.energy = tot[3];
    row.entropy = entropy_total_2d(s, gamma);
    row.residual = residual;
    r.diagnostics.push_back(row);
  };
  auto dump = [&](const std::string& tag) {
    const std::string base = "field_n" + std::to_string(nx) + "_" + tag;
    write_gas2d_dump(out.path(base + ".csv"), s, gamma);
    if (c.output.vtk) write_gas2d_vtk(out.path(base + ".vtk"), s, gamma);
  };

  // Velocity snapshots for the steady-state residual.
  Table residual{"steady_residual", {"t", "residual"}, {}};
  std::vector<double> snap_u, snap_v;
  double snap_t = 0.0;
  auto snapshot = [&](std::vector<double>& u, std::vector<double>& v) {
    u.resize(static_cast<std::size_t>(nx) * ny);
    v.resize(u.size());
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const Vec12& U = s.U(i, j);
        u[i + j * nx] = U[1] / U[0];
        v[i + j * nx] = U[2] / U[0];
      }
  };
  if (steady) snapshot(snap_u, snap_v);

  {
    const auto sp = max_wave_speed_ns2(s, p);
    record(0.0, std::max(sp.x, sp.y), 0.0);
  }
  bool converged = false;
  while (!finished(s.t, c.time) && !converged) {
    check_budget(s.steps, c.time);
    const auto sp = max_wave_speed_ns2(s, p);
    const double dt = compute_dt(sp.x, grid.dx(), sp.y, grid.dy(), c.time, s.t);
    const bool diag = out.diag_now(s.steps + 1);
    Field2D<Vec12> before;
    if (diag) before = s.U;
    at_step(s.steps, [&] { step_ns2(s, p, dt, su.bc, c.limiter, su.forcing); });
    if (diag) {
      double res = 0.0;
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) res = std::max(res, (s.U(i, j) - before(i, j)).cwiseAbs().maxCoeff() / dt);
      record(dt, std::max(sp.x, sp.y), res);
    }
    if (steady && s.t - snap_t >= c.steady.interval * (1.0 - 1e-9)) {
      std::vector<double> u, v;
      snapshot(u, v);
      double res = 0.0;
      for (std::size_t k = 0; k < u.size(); ++k)
        res = std::max({res, std::abs(u[k] - snap_u[k]), std::abs(v[k] - snap_v[k])});
      res /= (s.t - snap_t);
      residual.rows.push_back({s.t, res});
      snap_u.swap(u);
      snap_v.swap(v);
      snap_t = s.t;
      converged = c.steady.stop_on_residual && res < c.steady.tolerance;
    }
    if (out.dump_now(s.steps)) dump("step" + std::to_string(s.steps));
  }
  LevelResult level{nx, ny, s.steps, seconds_since(t0), false, {}};
  if (out.on()) dump("final");
  finish_level(out, r, nx);

  if (c.problem == Problem::Mms2d) {
    std::vector<double> rho(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) rho[i + j * nx] = s.U(i, j)[0];
    level.has_error = true;
    level.error = ref::error_norms(rho, [t = s.t](double x, double y) { return ref::mms_fields(x, y, t).rho; }, grid);
  }
  if (steady) {
    bool monotone = true;
    int counted = 0;
    for (std::size_t k = 1; k < residual.rows.size(); ++k) {
      if (residual.rows[k][0] < 0.5 * s.t) continue;
      if (residual.rows[k - 1][0] >= 0.5 * s.t) {
        ++counted;
        if (residual.rows[k][1] > residual.rows[k - 1][1]) monotone = false;
      }
    }
    r.metrics.push_back({"residual_monotone", monotone && counted > 0 ? 1.0 : 0.0});
    r.metrics.push_back({"final_residual", residual.rows.empty() ? 0.0 : residual.rows.back()[1]});
    add_table(out, r, std::move(residual), nx);
  }
  r.metrics.push_back({"t_final", s.t});
  const FlowField2D field = flow_field(s, gamma);
  if (c.problem == Problem::Cavity) cavity_outputs(c, field, out, r, nx);
  if (c.problem == Problem::FlatPlate) flat_plate_outputs(c, field, out, r, nx);
  if (c.problem == Problem::ViscousShockTube) {
    Table wall{"bottom_wall_density", {"x", "rho"}, {}};
    for (int i = 0; i < nx; ++i) wall.rows.push_back({grid.x.center(i), s.U(i, 0)[0]});
    add_table(out, r, std::move(wall), nx);
    try {
      const VortexResult v = vortex_height(field);
      r.metrics.push_back({"vortex_height", v.height});
      r.metrics.push_back({"vortex_core_x", v.core_x});
      r.metrics.push_back({"vortex_core_y", v.core_y});
    } catch (const SolverError& e) {
      if (e.kind() != ErrorKind::NoVortexFound) throw;
      r.metrics.push_back({"vortex_height", std::numeric_limits<double>::quiet_NaN()});
    }
  }
  return level;
}

}  // namespace

FlowField2D flow_field(const GasState2D& s, double gamma) {
  FlowField2D f;
  f.grid = s.grid;
  const std::size_t n = static_cast<std::size_t>(s.grid.nx()) * s.grid.ny();
  f.rho.resize(n);
  f.u.resize(n);
  f.v.resize(n);
  f.p.resize(n);
  for (int j = 0; j < s.grid.ny(); ++j)
    for (int i = 0; i < s.grid.nx(); ++i) {
      const Vec4 q = gas::prim_from_cons<2>(s.U(i, j).head<4>(), gamma);
      const std::size_t k = i + static_cast<std::size_t>(j) * s.grid.nx();
      f.rho[k] = q[0];
      f.u[k] = q[1];
      f.v[k] = q[2];
      f.p[k] = q[0] * q[3];
    }
  return f;
}

VortexResult vortex_height(const FlowField2D& f) {
  const int nx = f.grid.nx(), ny = f.grid.ny();
  const double dy = f.grid.dy();
  // psi at node (i, j) = top face of cell (i, j); the wall row is psi = 0.
  std::vector<double> psi(static_cast<std::size_t>(nx) * ny);
  double scale = 0.0;
  for (int i = 0; i < nx; ++i) {
    double acc = 0.0;
    for (int j = 0; j < ny; ++j) {
      acc += f.at(f.rho, i, j) * f.at(f.u, i, j) * dy;
      psi[i + j * nx] = acc;
      scale = std::max(scale, std::abs(acc));
    }
  }
  auto P = [&](int i, int j) { return j < 0 ? 0.0 : psi[i + j * nx]; };
  const double floor_value = std::max(1e-12, 1e-9 * scale);

  VortexResult best;
  bool found = false;
  for (int j = 0; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      const double c = P(i, j);
      if (std::abs(c) <= floor_value) continue;
      bool is_max = true, is_min = true;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (!di && !dj) continue;
          const double nb = P(i + di, j + dj);
          is_max = is_max && c > nb;
          is_min = is_min && c < nb;
        }
      if (!is_max && !is_min) continue;
      // Region enclosed by the psi = 0 separatrix around this core.
      std::vector<char> seen(psi.size(), 0);
      std::vector<std::pair<int, int>> stack{{i, j}};
      seen[i + j * nx] = 1;
      int top = j;
      bool open = false;
      const double sign = c > 0.0 ? 1.0 : -1.0;
      while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        top = std::max(top, b);
        if (b == ny - 1) open = true;
        const int nb[4][2] = {{a + 1, b}, {a - 1, b}, {a, b + 1}, {a, b - 1}};
        for (const auto& q : nb) {
          if (q[0] < 0 || q[0] >= nx || q[1] < 0 || q[1] >= ny) continue;
          const std::size_t k = q[0] + static_cast<std::size_t>(q[1]) * nx;
          if (seen[k] || sign * psi[k] <= 0.0) continue;
          seen[k] = 1;
          stack.push_back({q[0], q[1]});
        }
      }
      if (open) continue;
      if (!found || std::abs(c) > std::abs(best.core_psi)) {
        found = true;
        best.core_psi = c;
        best.core_x = f.grid.x.center(i);
        best.core_y = f.grid.y.face(j);
        best.height = f.grid.y.face(top) - f.grid.y.x_min();
      }
    }
  }
  if (!found) throw SolverError(ErrorKind::NoVortexFound, "no closed recirculation region attached to the bottom wall");
  return best;
}

RunResult run(const RunConfig& cfg) {
  if (cfg.threads > 0) set_thread_count(cfg.threads);
  RunResult r;
  Output out(cfg, r);
  if (out.on()) write_text(out.path("manifest.cfg"), cfg.manifest());
  for (std::size_t k = 0; k < cfg.nx.size(); ++k) {
    const int nx = cfg.nx[k];
    switch (cfg.problem) {
      case Problem::BurgersIbvp: r.levels.push_back(run_burgers(cfg, nx, out, r)); break;
      case Problem::Sod:
      case Problem::Custom: r.levels.push_back(run_riemann_1d(cfg, nx, out, r)); break;
      default: r.levels.push_back(run_2d(cfg, nx, cfg.ny[k], out, r)); break;
    }
  }
  const bool has_errors = std::all_of(r.levels.begin(), r.levels.end(), [](const auto& l) { return l.has_error; });
  if (has_errors) {
    Table t = error_table(r.levels);
    if (out.on()) write_table_csv(out.path("errors.csv"), t);
    r.tables.push_back(std::move(t));
  }
  const auto& last = r.levels.back();
  r.metrics.push_back({"steps", static_cast<double>(last.steps)});
  r.metrics.push_back({"seconds", last.seconds});
  if (out.on()) {
    std::ostringstream o;
    o << "metric,value\n";
    o.precision(10);
    for (const auto& [k, v] : r.metrics)
      if (k != "seconds") o << k << "," << v << "\n";
    write_text(out.path("summary.csv"), o.str());
  }
  return r;
}

}  // namespace relaxflux::app
