#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "relaxflux/app/config.hpp"
#include "relaxflux/ns1d.hpp"
#include "relaxflux/ns2d.hpp"
#include "relaxflux/reference.hpp"
#include "relaxflux/scalar1d.hpp"

namespace relaxflux::app {

struct DiagnosticsRow {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double lambda_max = 0.0;
  double mass = 0.0;
  double momentum_x = 0.0;
  double momentum_y = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double residual = 0.0;  // max |U^{n+1} - U^n| / dt over cells and components
};

struct LevelResult {
  int nx = 0;
  int ny = 0;
  long steps = 0;
  double seconds = 0.0;
  bool has_error = false;
  reference::ErrorReport error;
};

// A named table written as <name>.csv.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunResult {
  std::vector<LevelResult> levels;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<DiagnosticsRow> diagnostics;  // last level only
  std::vector<Table> tables;
  std::vector<std::string> files;

  double metric(const std::string& name) const;  // throws InvalidArgument
  bool has_metric(const std::string& name) const;
};

// Runs every grid level of the configuration and, when cfg.output.dir is
// set, writes the manifest, diagnostics, tables, error table and dumps.
RunResult run(const RunConfig& cfg);

// Error table rows in the layout N, Nstep, L1, order, Linf, order.
Table error_table(const std::vector<LevelResult>& levels);

// Primitive 2-D field sampled at cell centres, row-major with i fastest.
struct FlowField2D {
  Grid2D grid;
  std::vector<double> rho, u, v, p;
  double at(const std::vector<double>& f, int i, int j) const { return f[i + j * grid.nx()]; }
};

FlowField2D flow_field(const GasState2D& s, double gamma);

struct VortexResult {
  double height = 0.0;
  double core_x = 0.0;
  double core_y = 0.0;
  double core_psi = 0.0;
};

// Height of the primary recirculation region attached to the bottom wall.
// psi(i, j) integrates rho u from the wall to the top face of cell j. The
// core is the interior local extremum of psi of largest magnitude; the
// separatrix is psi = 0, and the height is the largest node y reachable from
// the core through nodes whose psi has the core's sign. Regions reaching the
// top row are not closed and are skipped. Throws NoVortexFound.
VortexResult vortex_height(const FlowField2D& f);

}  // namespace relaxflux::app
