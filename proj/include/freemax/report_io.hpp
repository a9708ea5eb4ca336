#pragma once

#include <iosfwd>
#include <string>

#include "freemax/harness.hpp"

namespace freemax {

/// CSV with header n,sup_error,argmax_x,A_n,B_n,g_at_norm,n_inv; 17 significant digits.
void write_report_csv(std::ostream& out, const ConvergenceReport& report);
/// Reads rows written by write_report_csv; summary fields stay default.
ConvergenceReport read_report_csv(std::istream& in);

/// {"fitted_slope":..,"bound_satisfied":..,"C":..,"n_threshold":..}
std::string report_summary_json(const ConvergenceReport& report);
/// Copies the summary fields from JSON text into report.
void apply_summary_json(const std::string& json_text, ConvergenceReport& report);

/// Two columns: log n, log sup_error.
void write_plot_data(std::ostream& out, const ConvergenceReport& report);

/// %.17g
std::string format_machine(double v);

} // namespace freemax
