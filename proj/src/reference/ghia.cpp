#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "relaxflux/core/error.hpp"
#include "relaxflux/reference.hpp"

#ifndef RELAXFLUX_SOURCE_DATA_DIR
#define RELAXFLUX_SOURCE_DATA_DIR "data"
#endif

namespace relaxflux::reference {

std::string data_path(const std::string& name) {
  if (const char* env = std::getenv("RELAXFLUX_DATA_DIR"); env && *env) {
    return (std::filesystem::path(env) / name).string();
  }
  return (std::filesystem::path(RELAXFLUX_SOURCE_DATA_DIR) / name).string();
}

GhiaReference load_ghia_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SolverError(ErrorKind::MissingResource, "cannot open cavity reference data: " + path);
  GhiaReference ref;
  BenchmarkCurve* current = nullptr;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw SolverError(ErrorKind::SchemaError, path + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::string head;
    ss >> head;
    if (head == "block") {
      int re = 0;
      std::string kind, extra;
      if (!(ss >> re >> kind) || (ss >> extra) || (kind != "U" && kind != "V") || re <= 0) {
        fail("expected 'block <Re> <U|V>'");
      }
      auto& map = kind == "U" ? ref.u_vertical : ref.v_horizontal;
      current = &map[re];
      current->label = kind + " Re=" + std::to_string(re);
      continue;
    }
    if (!current) fail("data row before any block header");
    double coord = 0.0, value = 0.0;
    std::string extra;
    std::istringstream row(line);
    if (!(row >> coord >> value) || (row >> extra)) fail("expected two numeric columns");
    if (!current->abscissa.empty() && coord <= current->abscissa.back()) {
      fail("coordinates must increase within a block");
    }
    current->abscissa.push_back(coord);
    current->ordinate.push_back(value);
  }
  if (ref.u_vertical.empty() && ref.v_horizontal.empty()) {
    throw SolverError(ErrorKind::SchemaError, path + ": no data blocks");
  }
  return ref;
}

}  // namespace relaxflux::reference
