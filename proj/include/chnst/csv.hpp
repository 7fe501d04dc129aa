#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "chnst/diagnostics.hpp"
#include "chnst/harness.hpp"

namespace chnst {

/// Round-trip-exact decimal form of a double (17 significant digits).
std::string format_value(double v);

/// Column names of the per-step diagnostics stream.
extern const char* const kDiagnosticsHeader;

void write_diagnostics_header(std::ostream& os);
void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& record);
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records);

/// Convergence table with eoc cells left empty where the order is undefined
/// (first row, or degenerate zero errors).
void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);

}  // namespace chnst
