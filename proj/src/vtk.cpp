#include "chnst/vtk.hpp"

#include <fstream>
#include <stdexcept>

#include "chnst/csv.hpp"

namespace chnst {

namespace {

void write_scalar(std::ostream& os, const char* name, const ScalarField& field, int n) {
  os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      os << format_value(field.dofs[field.mesh->dof(i % n, j % n)]) << '\n';
    }
  }
}

}  // namespace

void write_vtk_snapshot(std::ostream& os, const State& state) {
  const PeriodicMesh& mesh = *state.mesh();
  const int n = mesh.subdivisions();
  const double h = mesh.mesh_size();
  const int points = (n + 1) * (n + 1);
  const auto point_id = [n](int i, int j) { return i + (n + 1) * j; };

  os << "# vtk DataFile Version 3.0\n";
  os << "periodic fields at t = " << format_value(state.t) << '\n';
  os << "ASCII\nDATASET UNSTRUCTURED_GRID\n";

  os << "POINTS " << points << " double\n";
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      os << format_value(i * h) << ' ' << format_value(j * h) << " 0\n";
    }
  }

  const int cells = 2 * n * n;
  os << "CELLS " << cells << ' ' << 4 * cells << '\n';
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      os << "3 " << point_id(i, j) << ' ' << point_id(i + 1, j) << ' ' << point_id(i + 1, j + 1)
         << '\n';
      os << "3 " << point_id(i, j) << ' ' << point_id(i + 1, j + 1) << ' ' << point_id(i, j + 1)
         << '\n';
    }
  }
  os << "CELL_TYPES " << cells << '\n';
  for (int c = 0; c < cells; ++c) os << "5\n";

  os << "POINT_DATA " << points << '\n';
  write_scalar(os, "phi", state.phi, n);
  write_scalar(os, "mu", state.mu, n);
  write_scalar(os, "theta", state.theta, n);
  write_scalar(os, "pi", state.pi, n);
  os << "VECTORS u double\n";
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const int dof = mesh.dof(i % n, j % n);
      os << format_value(state.u.x.dofs[dof]) << ' ' << format_value(state.u.y.dofs[dof])
         << " 0\n";
    }
  }
}

void write_vtk_snapshot(const std::string& path, const State& state) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open snapshot file '" + path + "'");
  write_vtk_snapshot(out, state);
  if (!out.flush()) throw std::runtime_error("failed writing snapshot file '" + path + "'");
}

}  // namespace chnst
