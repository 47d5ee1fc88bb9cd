#include "relaxflux/app/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

#include "relaxflux/core/error.hpp"

namespace relaxflux::app {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw SolverError(ErrorKind::ConfigError, what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_number(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    config_error("key '" + key + "': '" + s + "' is not a number");
  }
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream o;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) o << ", ";
    if constexpr (std::is_floating_point_v<T>) {
      o << fmt(v[k]);
    } else {
      o << v[k];
    }
  }
  return o.str();
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_error(origin + ":" + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      config_error(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) config_error(origin + ":" + std::to_string(lineno) + ": empty key");
    c.values_[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SolverError(ErrorKind::MissingResource, "cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

const std::string* Config::find(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return nullptr;
  used_.insert(key);
  return &it->second;
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  const auto* v = find(key);
  return v ? *v : fallback;
}

double Config::number(const std::string& key, double fallback) const {
  const auto* v = find(key);
  return v ? to_number(key, *v) : fallback;
}

long Config::integer(const std::string& key, long fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  const double d = to_number(key, *v);
  if (d != std::floor(d)) config_error("key '" + key + "' must be an integer");
  return static_cast<long>(d);
}

bool Config::flag(const std::string& key, bool fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "on" || *v == "yes" || *v == "1") return true;
  if (*v == "false" || *v == "off" || *v == "no" || *v == "0") return false;
  config_error("key '" + key + "': '" + *v + "' is not a boolean");
}

std::vector<double> Config::numbers(const std::string& key, const std::vector<double>& fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(*v)) out.push_back(to_number(key, item));
  return out;
}

std::vector<int> Config::integers(const std::string& key, const std::vector<int>& fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  std::vector<int> out;
  for (const auto& item : split_list(*v)) {
    const double d = to_number(key, item);
    if (d != std::floor(d) || d < 1) config_error("key '" + key + "' needs positive integers");
    out.push_back(static_cast<int>(d));
  }
  return out;
}

std::vector<std::string> Config::unused() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_)
    if (!used_.count(k)) out.push_back(k);
  return out;
}

const char* to_string(Problem p) {
  switch (p) {
    case Problem::BurgersIbvp: return "burgers_ibvp";
    case Problem::Mms2d: return "mms2d";
    case Problem::Sod: return "sod";
    case Problem::FlatPlate: return "flat_plate";
    case Problem::Cavity: return "cavity";
    case Problem::ViscousShockTube: return "viscous_shock_tube";
    case Problem::Custom: return "custom";
  }
  return "unknown";
}

Problem parse_problem(const std::string& name) {
  for (Problem p : {Problem::BurgersIbvp, Problem::Mms2d, Problem::Sod, Problem::FlatPlate,
                    Problem::Cavity, Problem::ViscousShockTube, Problem::Custom}) {
    if (name == to_string(p)) return p;
  }
  config_error("unknown problem '" + name + "'");
}

bool is_two_dimensional(Problem p) {
  return p == Problem::Mms2d || p == Problem::FlatPlate || p == Problem::Cavity ||
         p == Problem::ViscousShockTube;
}

EpsilonRule EpsilonRule::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  static const std::regex power(R"(\(dx\^2/mu\)(\^([0-9.eE+-]+))?)");
  static const std::regex mu_over(R"(mu/([0-9.eE+-]+))");
  static const std::regex coef(R"(([0-9.eE+-]+)\*dx\^2)");
  std::smatch m;
  EpsilonRule r;
  if (std::regex_match(s, m, power)) {
    r.kind = Kind::PowerDx2OverMu;
    r.value = m[2].matched ? to_number("physics.epsilon", m[2]) : 1.0;
  } else if (std::regex_match(s, m, mu_over)) {
    r.kind = Kind::MuOver;
    r.value = to_number("physics.epsilon", m[1]);
  } else if (std::regex_match(s, m, coef)) {
    r.kind = Kind::CoefDx2;
    r.value = to_number("physics.epsilon", m[1]);
  } else if (s == "dx^2") {
    r.kind = Kind::CoefDx2;
    r.value = 1.0;
  } else {
    r.kind = Kind::Absolute;
    r.value = to_number("physics.epsilon", s);
  }
  if (!(r.value > 0.0)) config_error("epsilon rule '" + text + "' needs a positive constant");
  return r;
}

double EpsilonRule::resolve(double dx, double mu) const {
  switch (kind) {
    case Kind::Absolute: return value;
    case Kind::PowerDx2OverMu:
      if (!(mu > 0.0)) config_error("epsilon = (dx^2/mu)^k needs mu > 0");
      return std::pow(dx * dx / mu, value);
    case Kind::MuOver:
      if (!(mu > 0.0)) config_error("epsilon = mu/c needs mu > 0");
      return mu / value;
    case Kind::CoefDx2: return value * dx * dx;
  }
  return value;
}

std::string EpsilonRule::describe() const {
  switch (kind) {
    case Kind::Absolute: return fmt(value);
    case Kind::PowerDx2OverMu: return "(dx^2/mu)^" + fmt(value);
    case Kind::MuOver: return "mu/" + fmt(value);
    case Kind::CoefDx2: return fmt(value) + "*dx^2";
  }
  return "";
}

RelaxParams RunConfig::params(double dx) const {
  const double eps = epsilon.resolve(dx, mu);
  RelaxParams p = problem == Problem::BurgersIbvp ? RelaxParams::scalar(eps, a, mu)
                                                  : RelaxParams::gas(eps, a, mu, gamma, prandtl);
  p.validate();
  return p;
}

RunConfig defaults_for(Problem p) {
  RunConfig c;
  c.problem = p;
  switch (p) {
    case Problem::BurgersIbvp:
      c.nx = {64, 128, 256, 512};
      c.mu = 0.01;
      c.a = 0.0;
      c.epsilon = EpsilonRule::parse("(dx^2/mu)^1");
      c.time = {0.7, 10.0};
      break;
    case Problem::Mms2d:
      c.nx = {16, 32, 64};
      c.x_max = c.y_max = 2.0;
      c.mu = 0.001;
      c.a = 1.2;
      c.epsilon = EpsilonRule::parse("0.1*dx^2");
      c.time = {0.3, 1.0};
      break;
    case Problem::Sod:
    case Problem::Custom:
      c.nx = {200};
      c.mu = 2e-3;
      c.a = 1.0;
      c.epsilon = EpsilonRule::parse("mu/100");
      c.time = {0.7, 0.2};
      c.limiter = Limiter::minmod(2.0);
      break;
    case Problem::FlatPlate:
      c.nx = {60};
      c.ny = {30};
      c.x_min = -20.0;
      c.x_max = 100.0;
      c.y_max = 15.0;
      c.mu = 0.01;
      c.a = 1.5;
      c.epsilon = EpsilonRule::parse("mu/100");
      c.time = {0.3, 300.0};
      c.stations = {40.0, 80.0};
      c.output.diagnostics_every = 50;
      break;
    case Problem::Cavity:
      c.nx = {85};
      c.mu = 1.0 / 400.0;
      c.a = 2.0;
      c.epsilon = EpsilonRule::parse("mu/100");
      c.time = {0.3, 50.0};
      c.output.diagnostics_every = 100;
      break;
    case Problem::ViscousShockTube:
      c.nx = {400};
      c.ny = {200};
      c.y_max = 0.5;
      c.mu = 0.005;
      c.a = 0.7;
      c.epsilon = EpsilonRule::parse("mu/200");
      c.time = {0.3, 1.0};
      c.limiter = Limiter::minmod(2.0);
      c.output.diagnostics_every = 20;
      break;
  }
  return c;
}

namespace {

ScalarScheme parse_scheme(const std::string& s) {
  if (s == "upwind1") return ScalarScheme::Upwind1;
  if (s == "upwind2") return ScalarScheme::Upwind2;
  if (s == "imex_grp") return ScalarScheme::ImexGrp;
  config_error("unknown scheme '" + s + "'");
}

const char* boundary_names[] = {"extrapolation", "symmetric", "periodic", "wall_adiabatic"};

}  // namespace

RunConfig resolve(const Config& cfg) {
  if (!cfg.has("problem.name")) config_error("missing [problem] name");
  RunConfig c = defaults_for(parse_problem(cfg.text("problem.name", "")));
  const bool two_d = is_two_dimensional(c.problem);

  c.nx = cfg.integers("grid.nx", c.nx);
  c.x_min = cfg.number("grid.x_min", c.x_min);
  c.x_max = cfg.number("grid.x_max", c.x_max);
  if (two_d) {
    c.y_min = cfg.number("grid.y_min", c.y_min);
    c.y_max = cfg.number("grid.y_max", c.y_max);
    std::vector<int> ny_default;
    const bool explicit_ny = cfg.has("grid.ny");
    if (!explicit_ny) {
      const double ratio = (c.y_max - c.y_min) / (c.x_max - c.x_min);
      for (int n : c.nx) ny_default.push_back(std::max(1, static_cast<int>(std::lround(n * ratio))));
    }
    c.ny = cfg.integers("grid.ny", explicit_ny ? std::vector<int>{} : ny_default);
    if (c.ny.size() != c.nx.size()) config_error("grid.ny must list one entry per grid.nx entry");
  } else {
    c.ny.clear();
  }
  if (c.nx.empty()) config_error("grid.nx is empty");
  if (!(c.x_max > c.x_min) || (two_d && !(c.y_max > c.y_min))) config_error("empty domain");

  c.mu = cfg.number("physics.mu", c.mu);
  c.a = cfg.number("physics.a", c.a);
  if (cfg.has("physics.epsilon")) c.epsilon = EpsilonRule::parse(cfg.text("physics.epsilon", ""));
  c.gamma = cfg.number("physics.gamma", c.gamma);
  c.prandtl = cfg.number("physics.prandtl", c.prandtl);
  c.mach = cfg.number("physics.mach", c.mach);
  c.lid_speed = cfg.number("physics.lid_speed", c.lid_speed);

  c.time.cfl = cfg.number("time.cfl", c.time.cfl);
  c.time.t_end = cfg.number("time.t_end", c.time.t_end);
  c.time.max_steps = cfg.integer("time.max_steps", c.time.max_steps);
  c.time.validate();

  c.scheme = parse_scheme(cfg.text("scheme.name", "imex_grp"));
  const std::string lim = cfg.text("scheme.limiter", c.limiter.enabled ? "minmod" : "off");
  const double alpha = cfg.number("scheme.alpha", 2.0);
  if (lim == "off") {
    c.limiter = Limiter::off();
  } else if (lim == "minmod") {
    if (alpha < 0.0 || alpha > 2.0) config_error("scheme.alpha must lie in [0, 2]");
    c.limiter = Limiter::minmod(alpha);
  } else {
    config_error("unknown limiter '" + lim + "'");
  }
  if (c.problem != Problem::BurgersIbvp && c.scheme != ScalarScheme::ImexGrp) {
    config_error(std::string("scheme ") + to_string(c.scheme) + " is only available for burgers_ibvp");
  }

  if (c.problem == Problem::Custom || c.problem == Problem::Sod) {
    c.left_state = cfg.numbers("initial.left", c.left_state);
    c.right_state = cfg.numbers("initial.right", c.right_state);
    c.interface = cfg.number("initial.interface", c.interface);
    if (c.left_state.size() != 3 || c.right_state.size() != 3) {
      config_error("initial.left/right need (rho, u, p)");
    }
  }
  if (c.problem == Problem::Custom) {
    c.boundary_left = cfg.text("boundary.left", c.boundary_left);
    c.boundary_right = cfg.text("boundary.right", c.boundary_right);
    for (const auto* b : {&c.boundary_left, &c.boundary_right}) {
      bool ok = false;
      for (const char* n : boundary_names) ok = ok || *b == n;
      if (!ok) config_error("unsupported boundary '" + *b + "'");
    }
  }
  if (c.problem == Problem::FlatPlate) c.stations = cfg.numbers("output.stations", c.stations);
  if (c.problem == Problem::Cavity) {
    c.reynolds_ghia = static_cast<int>(cfg.integer("reference.ghia_re", std::lround(1.0 / c.mu)));
  }

  const std::string stop = cfg.text("steady.stop", "time");
  if (stop != "time" && stop != "residual") config_error("steady.stop must be time or residual");
  c.steady.stop_on_residual = stop == "residual";
  c.steady.tolerance = cfg.number("steady.tolerance", c.steady.tolerance);
  c.steady.interval = cfg.number("steady.interval", c.steady.interval);
  if (!(c.steady.interval > 0.0)) config_error("steady.interval must be positive");

  c.output.dir = cfg.text("output.dir", c.output.dir);
  c.output.dump_every = cfg.integer("output.dump_every", c.output.dump_every);
  c.output.vtk = cfg.flag("output.vtk", c.output.vtk);
  c.output.diagnostics_every = cfg.integer("output.diagnostics_every", c.output.diagnostics_every);
  if (c.output.dump_every < 0 || c.output.diagnostics_every < 1) {
    config_error("output cadences must be positive");
  }
  c.seed = static_cast<std::uint64_t>(cfg.integer("run.seed", static_cast<long>(c.seed)));
  c.threads = static_cast<int>(cfg.integer("run.threads", c.threads));

  const auto unused = cfg.unused();
  if (!unused.empty()) config_error("unknown or inapplicable key '" + unused.front() + "'");

  for (int n : c.nx) c.params((c.x_max - c.x_min) / n);
  return c;
}

std::string RunConfig::manifest() const {
  std::ostringstream o;
  o << "[problem]\nname = " << to_string(problem) << "\n\n[grid]\n";
  o << "nx = " << join(nx) << "\n";
  if (!ny.empty()) o << "ny = " << join(ny) << "\n";
  o << "x_min = " << fmt(x_min) << "\nx_max = " << fmt(x_max) << "\n";
  if (!ny.empty()) o << "y_min = " << fmt(y_min) << "\ny_max = " << fmt(y_max) << "\n";
  o << "\n[physics]\nmu = " << fmt(mu) << "\na = " << fmt(a) << "\nepsilon = " << epsilon.describe() << "\n";
  if (problem != Problem::BurgersIbvp) {
    o << "gamma = " << fmt(gamma) << "\nprandtl = " << fmt(prandtl) << "\n";
  }
  if (problem == Problem::Cavity || problem == Problem::FlatPlate) o << "mach = " << fmt(mach) << "\n";
  if (problem == Problem::Cavity) o << "lid_speed = " << fmt(lid_speed) << "\n";
  if (problem == Problem::Sod || problem == Problem::Custom) {
    o << "\n[initial]\nleft = " << join(left_state) << "\nright = " << join(right_state)
      << "\ninterface = " << fmt(interface) << "\n";
  }
  if (problem == Problem::Custom) {
    o << "\n[boundary]\nleft = " << boundary_left << "\nright = " << boundary_right << "\n";
  }
  o << "\n[time]\ncfl = " << fmt(time.cfl) << "\nt_end = " << fmt(time.t_end)
    << "\nmax_steps = " << time.max_steps << "\n";
  o << "\n[scheme]\nname = " << to_string(scheme) << "\nlimiter = " << (limiter.enabled ? "minmod" : "off")
    << "\nalpha = " << fmt(limiter.alpha) << "\n";
  o << "\n[steady]\nstop = " << (steady.stop_on_residual ? "residual" : "time")
    << "\ntolerance = " << fmt(steady.tolerance) << "\ninterval = " << fmt(steady.interval) << "\n";
  if (problem == Problem::Cavity) o << "\n[reference]\nghia_re = " << reynolds_ghia << "\n";
  o << "\n[output]\ndump_every = " << output.dump_every << "\nvtk = " << (output.vtk ? "true" : "false")
    << "\ndiagnostics_every = " << output.diagnostics_every << "\n";
  if (problem == Problem::FlatPlate) o << "stations = " << join(stations) << "\n";
  o << "\n[run]\nseed = " << seed << "\n";
  return o.str();
}

}  // namespace relaxflux::app
