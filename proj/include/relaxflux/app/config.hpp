#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "relaxflux/core/limiter.hpp"
#include "relaxflux/core/params.hpp"
#include "relaxflux/scalar1d.hpp"

namespace relaxflux::app {

// Line-oriented `key = value` text with `[section]` headers. Keys are stored
// as "section.key". '#' starts a comment.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  void erase(const std::string& key) { values_.erase(key); }

  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback) const;

  // Keys never read through the accessors above.
  std::vector<std::string> unused() const;
  const std::map<std::string, std::string>& values() const { return values_; }
  const std::string& origin() const { return origin_; }

 private:
  const std::string* find(const std::string& key) const;
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
  std::string origin_;
};

enum class Problem { BurgersIbvp, Mms2d, Sod, FlatPlate, Cavity, ViscousShockTube, Custom };

const char* to_string(Problem p);
Problem parse_problem(const std::string& name);
bool is_two_dimensional(Problem p);

// Relaxation time either absolute or tied to the grid:
//   0.001 | (dx^2/mu)^k | mu/c | c*dx^2
struct EpsilonRule {
  enum class Kind { Absolute, PowerDx2OverMu, MuOver, CoefDx2 };
  Kind kind = Kind::Absolute;
  double value = 1.0;

  static EpsilonRule parse(const std::string& text);
  double resolve(double dx, double mu) const;
  std::string describe() const;
};

struct OutputOptions {
  std::string dir;              // empty: nothing is written
  long dump_every = 0;          // field dump cadence in steps (0: final only)
  bool vtk = false;
  long diagnostics_every = 1;   // steps between diagnostics rows
};

struct SteadyOptions {
  bool stop_on_residual = false;
  double tolerance = 1e-6;
  double interval = 1.0;        // time between velocity snapshots
};

struct RunConfig {
  Problem problem = Problem::BurgersIbvp;
  std::vector<int> nx;          // one entry per grid level
  std::vector<int> ny;          // 2-D only, same length as nx
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;

  double mu = 0.0;
  double a = 0.0;
  double gamma = 1.4;
  double prandtl = 0.72;
  EpsilonRule epsilon;
  TimeControl time;

  ScalarScheme scheme = ScalarScheme::ImexGrp;
  Limiter limiter = Limiter::off();

  double mach = 0.15;           // cavity and flat plate
  double lid_speed = 1.0;       // cavity
  std::vector<double> left_state{1.0, 0.0, 1.0};      // Riemann data (rho, u, p)
  std::vector<double> right_state{0.125, 0.0, 0.1};
  double interface = 0.5;
  std::string boundary_left = "extrapolation";        // custom problem only
  std::string boundary_right = "extrapolation";
  std::vector<double> stations;  // flat plate profile stations (x)
  int reynolds_ghia = 400;       // cavity reference block

  SteadyOptions steady;
  OutputOptions output;
  std::uint64_t seed = 1;
  int threads = 0;

  RelaxParams params(double dx) const;
  // Echo of every resolved parameter, in the config format.
  std::string manifest() const;
};

// Problem defaults first, then the config. Unknown keys and incompatible
// choices raise ConfigError before any computation.
RunConfig resolve(const Config& cfg);
RunConfig defaults_for(Problem p);

}  // namespace relaxflux::app
