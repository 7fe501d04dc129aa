#include "chnst/csv.hpp"

#include <cmath>
#include <cstdio>

namespace chnst {

namespace {

std::string format_eoc(double v) {
  if (!std::isfinite(v)) return {};
  return format_value(v);
}

}  // namespace

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* const kDiagnosticsHeader =
    "step,time,mass,kinetic,internal,total_energy,entropy,tau_Dphys,Dnum_residual,"
    "Dnum_graddiv,Dnum_pressure,newton_iters,residual";

void write_diagnostics_header(std::ostream& os) { os << kDiagnosticsHeader << '\n'; }

void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& record) {
  os << record.step << ',' << format_value(record.time) << ',' << format_value(record.mass) << ','
     << format_value(record.kinetic) << ',' << format_value(record.internal) << ','
     << format_value(record.total_energy) << ',' << format_value(record.entropy) << ','
     << format_value(record.tau_dphys) << ',' << format_value(record.dnum_residual) << ','
     << format_value(record.dnum_graddiv) << ',' << format_value(record.dnum_pressure) << ','
     << record.newton.newton_iters << ',' << format_value(record.newton.final_residual) << '\n';
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records) {
  write_diagnostics_header(os);
  for (const DiagnosticsRecord& record : records) write_diagnostics_row(os, record);
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "k,h,e_a,eoc_a,e_b,eoc_b,e_mu,eoc_mu,e_u,eoc_u,e_theta,eoc_theta\n";
  for (const ConvergenceRow& row : table.rows) {
    os << row.level << ',' << format_value(row.h) << ',' << format_value(row.e_a) << ','
       << format_eoc(row.eoc_a) << ',' << format_value(row.e_b) << ',' << format_eoc(row.eoc_b)
       << ',' << format_value(row.e_mu) << ',' << format_eoc(row.eoc_mu) << ','
       << format_value(row.e_u) << ',' << format_eoc(row.eoc_u) << ','
       << format_value(row.e_theta) << ',' << format_eoc(row.eoc_theta) << '\n';
  }
}

}  // namespace chnst
