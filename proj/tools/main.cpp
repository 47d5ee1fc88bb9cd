#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relaxflux/app/config.hpp"
#include "relaxflux/app/io.hpp"
#include "relaxflux/app/problems.hpp"
#include "relaxflux/app/properties.hpp"
#include "relaxflux/core/parallel.hpp"

namespace app = relaxflux::app;
using relaxflux::ErrorKind;
using relaxflux::SolverError;

namespace {

struct CommonFlags {
  std::string output_dir;
  int threads = 0;
  long seed = -1;
  long dump_every = -1;
};

app::RunConfig load_run_config(const std::string& path, const CommonFlags& f) {
  app::Config cfg = app::Config::load(path);
  if (!f.output_dir.empty()) cfg.set("output.dir", f.output_dir);
  if (!cfg.has("output.dir")) cfg.set("output.dir", "relaxflux_out");
  if (f.dump_every >= 0) cfg.set("output.dump_every", std::to_string(f.dump_every));
  if (f.seed >= 0) cfg.set("run.seed", std::to_string(f.seed));
  if (f.threads > 0) cfg.set("run.threads", std::to_string(f.threads));
  return app::resolve(cfg);
}

void print_errors(const app::Table& t) {
  std::printf("%8s %8s %12s %8s %12s %8s\n", "N", "Nstep", "L1", "order", "Linf", "order");
  for (const auto& r : t.rows) {
    auto order = [](double v) { return std::isnan(v) ? std::string("-") : std::to_string(v).substr(0, 6); };
    std::printf("%8.0f %8.0f %12.4e %8s %12.4e %8s\n", r[0], r[1], r[2], order(r[3]).c_str(), r[4],
                order(r[5]).c_str());
  }
}

void print_summary(const app::RunResult& r, const app::RunConfig& c) {
  for (const auto& [k, v] : r.metrics) std::printf("%-24s %.6g\n", k.c_str(), v);
  for (const auto& t : r.tables)
    if (t.name == "errors") print_errors(t);
  std::printf("outputs written to %s\n", c.output.dir.c_str());
}

int cmd_run(const std::string& path, const CommonFlags& f, bool convergence) {
  const app::RunConfig c = load_run_config(path, f);
  if (convergence) {
    if (c.nx.size() < 2) throw SolverError(ErrorKind::GridMismatch, "convergence needs at least two grid levels");
    for (std::size_t k = 1; k < c.nx.size(); ++k) {
      const bool ok = c.nx[k] == 2 * c.nx[k - 1] && (c.ny.empty() || c.ny[k] == 2 * c.ny[k - 1]);
      if (!ok) throw SolverError(ErrorKind::GridMismatch, "grid levels must refine by exactly 2");
    }
    if (c.problem != app::Problem::BurgersIbvp && c.problem != app::Problem::Mms2d) {
      throw SolverError(ErrorKind::ConfigError, "convergence needs a problem with an exact solution");
    }
  }
  const app::RunResult r = app::run(c);
  print_summary(r, c);
  return 0;
}

int cmd_validate(const CommonFlags& f) {
  const auto seed = static_cast<std::uint64_t>(f.seed >= 0 ? f.seed : 1);
  const auto results = app::property_suite(seed);
  bool all = true;
  std::string csv = "property,passed,measured,bound,detail\n";
  for (const auto& r : results) {
    std::printf("%s %-26s measured=%.3e bound=%.3e %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.measured,
                r.bound, r.detail.c_str());
    all = all && r.passed;
    char line[256];
    std::snprintf(line, sizeof line, "%s,%d,%.6e,%.6e,", r.name.c_str(), r.passed ? 1 : 0, r.measured, r.bound);
    csv += line + ("\"" + r.detail + "\"\n");
  }
  if (!f.output_dir.empty()) {
    app::ensure_directory(f.output_dir);
    app::write_text(f.output_dir + "/validation.csv", csv);
  }
  return all ? 0 : 1;
}

int cmd_vortex(const std::string& dump) {
  const auto field = app::read_field_dump(dump);
  const auto v = app::vortex_height(field);
  std::printf("vortex_height %.6f\ncore_x %.6f\ncore_y %.6f\n", v.height, v.core_x, v.core_y);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Flux-relaxation solvers for viscous conservation laws"};
  cli.require_subcommand(1);
  CommonFlags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output-dir", flags.output_dir, "Directory for CSV, dumps and the manifest");
    sub->add_option("--threads", flags.threads, "Worker threads (0: runtime default)");
    sub->add_option("--seed", flags.seed, "Seed for randomized property suites");
    sub->add_option("--dump-every", flags.dump_every, "Field dump cadence in steps");
  };

  std::string config_path, dump_path;
  auto* run = cli.add_subcommand("run", "Run a configuration");
  run->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  add_common(run);
  auto* conv = cli.add_subcommand("convergence", "Run a grid list and print errors and orders");
  conv->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  add_common(conv);
  auto* val = cli.add_subcommand("validate", "Run the property suites");
  add_common(val);
  auto* vh = cli.add_subcommand("vortex-height", "Primary-vortex height from a 2-D field dump");
  vh->add_option("dump", dump_path, "Field dump CSV")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(cli, argc, argv);
  if (flags.threads > 0) relaxflux::set_thread_count(flags.threads);
  try {
    if (run->parsed()) return cmd_run(config_path, flags, false);
    if (conv->parsed()) return cmd_run(config_path, flags, true);
    if (val->parsed()) return cmd_validate(flags);
    if (vh->parsed()) return cmd_vortex(dump_path);
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ConfigError || e.kind() == ErrorKind::GridMismatch ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
