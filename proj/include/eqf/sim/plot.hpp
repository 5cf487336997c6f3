#pragma once

#include <string>

namespace eqf::sim {

/// Writes a self-contained Python script that reads the named run CSV (and
/// nothing else) and draws the trajectory overlay plus log-scale error
/// curves. The script only needs matplotlib and the standard library.
void write_run_plot_script(const std::string& script_path, const std::string& csv_name);

/// Same idea for the precision study CSV: log-log deviation curves per chart
/// origin.
void write_precision_plot_script(const std::string& script_path, const std::string& csv_name);

}  // namespace eqf::sim
