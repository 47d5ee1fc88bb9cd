#include "relaxflux/boundary.hpp"

#include <algorithm>
#include <string>

namespace relaxflux {

const char* to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Symmetric: return "symmetric";
    case BoundaryKind::Extrapolation: return "extrapolation";
    case BoundaryKind::Inflow: return "inflow";
    case BoundaryKind::DirichletScalar: return "dirichlet";
    case BoundaryKind::NeumannScalar: return "neumann";
    case BoundaryKind::WallAdiabatic: return "wall_adiabatic";
    case BoundaryKind::WallIsothermal: return "wall_isothermal";
    case BoundaryKind::MovingWall: return "moving_wall";
  }
  return "unknown";
}

BoundarySpec BoundarySpec::inflow(std::vector<double> primitive) {
  BoundarySpec s = of(BoundaryKind::Inflow);
  s.inflow_primitive = std::move(primitive);
  return s;
}

BoundarySpec BoundarySpec::dirichlet(std::function<double(double)> u_b,
                                     std::function<double(double)> du_b) {
  BoundarySpec s = of(BoundaryKind::DirichletScalar);
  s.u_b = std::move(u_b);
  s.du_b = du_b ? std::move(du_b) : [](double) { return 0.0; };
  return s;
}

BoundarySpec BoundarySpec::wall_isothermal(double T_b) {
  BoundarySpec s = of(BoundaryKind::WallIsothermal);
  s.wall_temperature = T_b;
  return s;
}

BoundarySpec BoundarySpec::moving_wall(double speed, double T_b) {
  BoundarySpec s = of(BoundaryKind::MovingWall);
  s.wall_speed = speed;
  s.wall_temperature = T_b;
  return s;
}

EdgeBoundary& EdgeBoundary::then_from(double start, BoundarySpec spec) {
  pieces_.emplace_back(start, std::move(spec));
  std::stable_sort(pieces_.begin(), pieces_.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return *this;
}

const BoundarySpec& EdgeBoundary::at(double s) const {
  const BoundarySpec* found = &pieces_.front().second;
  for (const auto& [start, spec] : pieces_) {
    if (start <= s) found = &spec;
  }
  return *found;
}

namespace {

void check_pair(const EdgeBoundary& a, const EdgeBoundary& b, const char* axis) {
  const bool pa = a.uniform() && a.at(0).kind == BoundaryKind::Periodic;
  const bool pb = b.uniform() && b.at(0).kind == BoundaryKind::Periodic;
  for (const auto& e : {&a, &b})
    for (const auto& [s, spec] : e->pieces())
      if (spec.kind == BoundaryKind::Periodic && !e->uniform())
        throw SolverError(ErrorKind::ConfigError,
                          std::string("periodic boundary cannot be mixed along the ") + axis + " edges");
  if (pa != pb) {
    throw SolverError(ErrorKind::ConfigError,
                      std::string("periodic boundaries must be paired on both ") + axis + " edges");
  }
}

void check_kinds(const EdgeBoundary& e, bool scalar) {
  for (const auto& [s, spec] : e.pieces()) {
    if (scalar && (spec.is_wall() || spec.kind == BoundaryKind::Inflow ||
                   spec.kind == BoundaryKind::Symmetric)) {
      throw SolverError(ErrorKind::ConfigError,
                        std::string("boundary kind ") + to_string(spec.kind) + " is not available for scalar problems");
    }
    if (!scalar && spec.is_scalar_kind()) {
      throw SolverError(ErrorKind::ConfigError,
                        std::string("boundary kind ") + to_string(spec.kind) + " is only for scalar problems");
    }
    if (spec.kind == BoundaryKind::DirichletScalar && !spec.u_b) {
      throw SolverError(ErrorKind::ConfigError, "dirichlet boundary needs u_b(t)");
    }
    if ((spec.kind == BoundaryKind::WallIsothermal || spec.kind == BoundaryKind::MovingWall) &&
        !(spec.wall_temperature > 0.0)) {
      throw SolverError(ErrorKind::ConfigError, "isothermal wall needs a positive temperature");
    }
  }
}

}  // namespace

void Boundary1D::validate_scalar() const {
  check_pair(left, right, "x");
  check_kinds(left, true);
  check_kinds(right, true);
}

void Boundary1D::validate_gas() const {
  check_pair(left, right, "x");
  check_kinds(left, false);
  check_kinds(right, false);
  for (const auto* e : {&left, &right})
    for (const auto& [s, spec] : e->pieces())
      if (spec.kind == BoundaryKind::Inflow && spec.inflow_primitive.size() != 3)
        throw SolverError(ErrorKind::ConfigError, "1-D inflow needs (rho, u, p)");
}

void Boundary2D::validate_gas() const {
  check_pair(left, right, "x");
  check_pair(bottom, top, "y");
  for (const auto* e : {&left, &right, &bottom, &top}) {
    check_kinds(*e, false);
    for (const auto& [s, spec] : e->pieces())
      if (spec.kind == BoundaryKind::Inflow && spec.inflow_primitive.size() != 4)
        throw SolverError(ErrorKind::ConfigError, "2-D inflow needs (rho, u, v, p)");
  }
}

Vec2 scalar_dirichlet_state(double u_interior, double u_b, double mu, double dx, int outward,
                            const std::function<double(double)>& f,
                            const std::function<double(double)>& phi) {
  const double mirror = 2.0 * u_b - u_interior;
  // Gradient from the mirror cell to the interior cell, across the wall.
  const double grad = outward < 0 ? (u_interior - mirror) / dx : (mirror - u_interior) / dx;
  return Vec2(u_b, f(u_b) - mu * phi(u_b) * grad);
}

Vec2 scalar_neumann_state(double u_interior, const std::function<double(double)>& f) {
  return Vec2(u_interior, f(u_interior));
}

double gas1d_parity(int component) {
  switch (component) {
    case 1:
    case 3:
    case 5: return -1.0;
    default: return 1.0;
  }
}

double gas2d_parity(int component, int axis) {
  // Parity is (-1)^(number of indices along the reflected axis).
  // Components: w = 0..3, v_X = 4..7, v_Y = 8..11; within each, index 1 is
  // x-momentum and 2 is y-momentum.
  const int block = component / 4;
  const int inner = component % 4;
  int count = 0;
  if (axis == 0) {
    if (inner == 1) ++count;
    if (block == 1) ++count;
  } else {
    if (inner == 2) ++count;
    if (block == 2) ++count;
  }
  return count % 2 ? -1.0 : 1.0;
}

}  // namespace relaxflux
