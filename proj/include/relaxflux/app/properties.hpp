#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace relaxflux::app {

struct PropertyResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

// Roe identity, eigenvalue symmetry, conservation, equilibrium fixed points,
// relaxation-limit residual, 2-D to 1-D reduction, x/y symmetry, oracle
// agreement and the subcharacteristic check. Random samples use `seed`.
std::vector<PropertyResult> property_suite(std::uint64_t seed);

// Individual suites, also used by the acceptance binary.
PropertyResult roe_identity_check(std::uint64_t seed, int pairs = 10000);
PropertyResult eigen_symmetry_check(std::uint64_t seed, int samples = 1000);
std::vector<PropertyResult> conservation_checks();
std::vector<PropertyResult> fixed_point_checks();
PropertyResult relaxation_residual_check();
PropertyResult reduction_2d_1d_check();
PropertyResult xy_symmetry_check();
PropertyResult burgers_oracle_check();
PropertyResult ns1_oracle_check();
PropertyResult subchar_violation_check();

struct ApPoint {
  double epsilon;
  int n_cells;
  long steps;
  double l1;
};

// Burgers IBVP with h = eps^alpha and eps from the list, to t_end.
std::vector<ApPoint> ap_sweep(double alpha, const std::vector<double>& eps, double t_end,
                              double mu = 0.01, double cfl = 0.7);

}  // namespace relaxflux::app
