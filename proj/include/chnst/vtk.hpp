#pragma once

#include <ostream>
#include <string>

#include "chnst/scheme.hpp"

namespace chnst {

/// Writes a legacy ASCII VTK unstructured-grid snapshot of all fields.
/// The periodic seam is duplicated so the grid renders as the full unit
/// square: (n+1)^2 points, 2n^2 triangles, point data phi/mu/theta/pi and
/// the velocity as a 3-component vector with zero z.
void write_vtk_snapshot(std::ostream& os, const State& state);

/// Same, to a file; throws std::runtime_error when the file cannot be opened.
void write_vtk_snapshot(const std::string& path, const State& state);

}  // namespace chnst
