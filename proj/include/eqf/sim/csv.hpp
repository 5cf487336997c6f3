#pragma once

#include "eqf/equivalence.hpp"
#include "eqf/sim/sweep.hpp"

#include <iosfwd>
#include <string>

namespace eqf::sim {

/// Writes the run as CSV. Comment lines prefixed with '#' record the
/// generator name, landmark seed and positions, precision, step size, noise
/// level, and one note per filter. The data header is
///
///   t,theta_true,x_true,y_true,theta_est_1,x_est_1,y_est_1,pos_err_1,ang_err_1,...
///
/// with one estimate/error block per filter. Values are printed with %.17g so
/// doubles survive a write/parse round trip bit for bit.
void write_csv(std::ostream& out, const RunRecord& record);
void write_csv_file(const std::string& path, const RunRecord& record);

/// Reads back a file produced by write_csv: comment lines are skipped, the
/// header determines the filter count, and t, truth, estimates, and error
/// columns are restored. Sigma diagonals and landmark positions are not part
/// of the data section, so the parsed record carries the metadata found in
/// the comments only where it is needed for checks (dt, noise, precision are
/// not reconstructed). Throws std::runtime_error on malformed input.
[[nodiscard]] RunRecord parse_csv(std::istream& in);
[[nodiscard]] RunRecord parse_csv_file(const std::string& path);

/// Divergence series of a chart-equivalence experiment:
/// t,pos_divergence,ang_divergence,sigma_divergence.
void write_divergence_csv(std::ostream& out, const DivergenceReport& report);

/// Precision study: per-step position deviation of each single-precision
/// filter from the double reference, one column per chart origin, plus a
/// commented summary table of time-averaged and maximum deviations.
void write_precision_study_csv(std::ostream& out, const PrecisionStudy& study);

}  // namespace eqf::sim
