#pragma once

#include <string>
#include <vector>

#include "relaxflux/app/problems.hpp"

namespace relaxflux::app {

void ensure_directory(const std::string& dir);

void write_table_csv(const std::string& path, const Table& table);
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);
void write_text(const std::string& path, const std::string& text);

// x, u, v
void write_scalar_dump(const std::string& path, const ScalarRelaxState& s);
// x, rho, u, p, v1, v2, v3
void write_gas1d_dump(const std::string& path, const GasState1D& s, double gamma);
// x, y, rho, u, v, p, vX0..vX3, vY0..vY3
void write_gas2d_dump(const std::string& path, const GasState2D& s, double gamma);
// Legacy VTK structured points with density, pressure and velocity.
void write_gas2d_vtk(const std::string& path, const GasState2D& s, double gamma);

// Reads a 2-D dump back (columns x, y, rho, u, v, p are required). The grid is
// rebuilt from the distinct cell centres. Throws SchemaError/MissingResource.
FlowField2D read_field_dump(const std::string& path);

}  // namespace relaxflux::app
