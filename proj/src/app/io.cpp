#include "relaxflux/app/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "relaxflux/gas.hpp"

namespace relaxflux::app {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw SolverError(ErrorKind::MissingResource, "cannot write " + path);
  f << std::setprecision(12);
  return f;
}

}  // namespace

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw SolverError(ErrorKind::MissingResource, "cannot create directory " + dir + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  auto f = open_out(path);
  f << text;
}

void write_table_csv(const std::string& path, const Table& table) {
  auto f = open_out(path);
  for (std::size_t k = 0; k < table.columns.size(); ++k) f << (k ? "," : "") << table.columns[k];
  f << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      f << (k ? "," : "");
      if (std::isnan(row[k])) {
        f << "";
      } else {
        f << row[k];
      }
    }
    f << "\n";
  }
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
  auto f = open_out(path);
  f << "step,t,dt,lambda_max,mass,momentum_x,momentum_y,energy,entropy,residual\n";
  for (const auto& r : rows) {
    f << r.step << "," << r.t << "," << r.dt << "," << r.lambda_max << "," << r.mass << "," << r.momentum_x << ","
      << r.momentum_y << "," << r.energy << "," << r.entropy << "," << r.residual << "\n";
  }
}

void write_scalar_dump(const std::string& path, const ScalarRelaxState& s) {
  auto f = open_out(path);
  f << "x,u,v\n";
  for (int j = 0; j < s.grid.n_cells(); ++j) f << s.grid.center(j) << "," << s.U(j)[0] << "," << s.U(j)[1] << "\n";
}

void write_gas1d_dump(const std::string& path, const GasState1D& s, double gamma) {
  auto f = open_out(path);
  f << "x,rho,u,p,v1,v2,v3\n";
  for (int j = 0; j < s.grid.n_cells(); ++j) {
    const Vec6& U = s.U(j);
    const Vec3 q = gas::prim_from_cons<1>(U.head<3>(), gamma);
    f << s.grid.center(j) << "," << q[0] << "," << q[1] << "," << q[0] * q[2] << "," << U[3] << "," << U[4] << ","
      << U[5] << "\n";
  }
}

void write_gas2d_dump(const std::string& path, const GasState2D& s, double gamma) {
  auto f = open_out(path);
  f << "x,y,rho,u,v,p,vX0,vX1,vX2,vX3,vY0,vY1,vY2,vY3\n";
  for (int j = 0; j < s.grid.ny(); ++j)
    for (int i = 0; i < s.grid.nx(); ++i) {
      const Vec12& U = s.U(i, j);
      const Vec4 q = gas::prim_from_cons<2>(U.head<4>(), gamma);
      f << s.grid.x.center(i) << "," << s.grid.y.center(j) << "," << q[0] << "," << q[1] << "," << q[2] << ","
        << q[0] * q[3];
      for (int k = 4; k < 12; ++k) f << "," << U[k];
      f << "\n";
    }
}

void write_gas2d_vtk(const std::string& path, const GasState2D& s, double gamma) {
  auto f = open_out(path);
  const int nx = s.grid.nx(), ny = s.grid.ny();
  f << "# vtk DataFile Version 3.0\nrelaxflux field\nASCII\nDATASET STRUCTURED_POINTS\n";
  f << "DIMENSIONS " << nx << " " << ny << " 1\n";
  f << "ORIGIN " << s.grid.x.center(0) << " " << s.grid.y.center(0) << " 0\n";
  f << "SPACING " << s.grid.dx() << " " << s.grid.dy() << " 1\n";
  f << "POINT_DATA " << nx * ny << "\n";
  std::vector<Vec4> q(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) q[i + j * nx] = gas::prim_from_cons<2>(s.U(i, j).head<4>(), gamma);
  f << "SCALARS density double 1\nLOOKUP_TABLE default\n";
  for (const auto& v : q) f << v[0] << "\n";
  f << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (const auto& v : q) f << v[0] * v[3] << "\n";
  f << "VECTORS velocity double\n";
  for (const auto& v : q) f << v[1] << " " << v[2] << " 0\n";
}

FlowField2D read_field_dump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SolverError(ErrorKind::MissingResource, "cannot open field dump " + path);
  std::string line;
  if (!std::getline(in, line)) throw SolverError(ErrorKind::SchemaError, path + ": empty file");
  std::vector<std::string> cols;
  {
    std::istringstream h(line);
    std::string c;
    while (std::getline(h, c, ',')) cols.push_back(c);
  }
  std::map<std::string, int> index;
  for (std::size_t k = 0; k < cols.size(); ++k) index[cols[k]] = static_cast<int>(k);
  for (const char* need : {"x", "y", "rho", "u", "v", "p"})
    if (!index.count(need)) {
      throw SolverError(ErrorKind::SchemaError, path + ": missing column '" + need + "'");
    }
  struct Row {
    double x, y, rho, u, v, p;
  };
  std::vector<Row> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::istringstream r(line);
    std::string c;
    try {
      while (std::getline(r, c, ',')) vals.push_back(std::stod(c));
    } catch (const std::exception&) {
      throw SolverError(ErrorKind::SchemaError, path + ":" + std::to_string(lineno) + ": malformed value");
    }
    if (vals.size() != cols.size()) {
      throw SolverError(ErrorKind::SchemaError, path + ":" + std::to_string(lineno) + ": wrong column count");
    }
    rows.push_back({vals[index["x"]], vals[index["y"]], vals[index["rho"]], vals[index["u"]], vals[index["v"]],
                    vals[index["p"]]});
  }
  if (rows.empty()) throw SolverError(ErrorKind::SchemaError, path + ": no data rows");
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r.x);
    ys.push_back(r.y);
  }
  auto distinct = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const double tol = 1e-9 * std::max(1.0, std::abs(v.back() - v.front()));
    std::vector<double> out{v.front()};
    for (double d : v)
      if (d - out.back() > tol) out.push_back(d);
    return out;
  };
  xs = distinct(xs);
  ys = distinct(ys);
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  if (static_cast<std::size_t>(nx) * ny != rows.size() || nx < 2 || ny < 2) {
    throw SolverError(ErrorKind::SchemaError, path + ": rows do not form a rectangular grid");
  }
  const double dx = (xs.back() - xs.front()) / (nx - 1), dy = (ys.back() - ys.front()) / (ny - 1);
  FlowField2D f;
  f.grid = Grid2D{Grid1D(xs.front() - 0.5 * dx, xs.back() + 0.5 * dx, nx),
                  Grid1D(ys.front() - 0.5 * dy, ys.back() + 0.5 * dy, ny)};
  const std::size_t n = rows.size();
  f.rho.assign(n, 0.0);
  f.u.assign(n, 0.0);
  f.v.assign(n, 0.0);
  f.p.assign(n, 0.0);
  for (const auto& r : rows) {
    const int i = static_cast<int>(std::lround((r.x - xs.front()) / dx));
    const int j = static_cast<int>(std::lround((r.y - ys.front()) / dy));
    const std::size_t k = i + static_cast<std::size_t>(j) * nx;
    f.rho[k] = r.rho;
    f.u[k] = r.u;
    f.v[k] = r.v;
    f.p[k] = r.p;
  }
  return f;
}

}  // namespace relaxflux::app
