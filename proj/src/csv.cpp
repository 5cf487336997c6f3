#include "eqf/sim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace eqf::sim {

namespace {

/// Shortest decimal form that parses back to the same double.
std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_row(std::ostream& out, const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << format_value(values[i]);
  }
  out << '\n';
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

double parse_double(const std::string& field, size_t line_no) {
  try {
    size_t consumed = 0;
    const double v = std::stod(field, &consumed);
    if (consumed != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("csv: line " + std::to_string(line_no) +
                             ": not a number: '" + field + "'");
  }
}

}  // namespace

void write_csv(std::ostream& out, const RunRecord& record) {
  out << "# generator=" << kGeneratorName << " landmark_seed=" << record.landmark_seed << '\n';
  out << "# landmarks=";
  for (size_t i = 0; i < record.landmarks.size(); ++i) {
    if (i > 0) out << ';';
    out << format_value(record.landmarks[i].x()) << ',' << format_value(record.landmarks[i].y());
  }
  out << '\n';
  out << "# precision=" << precision_name(record.precision) << " dt=" << format_value(record.dt)
      << " noise_std=" << format_value(record.noise_std) << '\n';
  for (size_t i = 0; i < record.filter_notes.size(); ++i) {
    out << "# filter_" << (i + 1) << ' ' << record.filter_notes[i] << '\n';
  }

  out << "t,theta_true,x_true,y_true";
  for (size_t i = 1; i <= record.tracks.size(); ++i) {
    out << ",theta_est_" << i << ",x_est_" << i << ",y_est_" << i << ",pos_err_" << i
        << ",ang_err_" << i;
  }
  out << '\n';

  std::vector<double> row;
  for (size_t k = 0; k < record.rows(); ++k) {
    row.clear();
    row.push_back(record.t[k]);
    row.push_back(record.truth[k](0));
    row.push_back(record.truth[k](1));
    row.push_back(record.truth[k](2));
    for (const RunRecord::Track& track : record.tracks) {
      row.push_back(track.estimate[k](0));
      row.push_back(track.estimate[k](1));
      row.push_back(track.estimate[k](2));
      row.push_back(track.pos_err[k]);
      row.push_back(track.ang_err[k]);
    }
    write_row(out, row);
  }
}

void write_csv_file(const std::string& path, const RunRecord& record) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot open for writing: " + path);
  write_csv(out, record);
  if (!out) throw std::runtime_error("csv: write failed: " + path);
}

RunRecord parse_csv(std::istream& in) {
  RunRecord record;
  std::string line;
  size_t line_no = 0;
  bool header_seen = false;
  size_t filter_count = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    const std::vector<std::string> fields = split(line, ',');
    if (!header_seen) {
      if (fields.size() < 4 || fields[0] != "t" || (fields.size() - 4) % 5 != 0) {
        throw std::runtime_error("csv: line " + std::to_string(line_no) +
                                 ": unrecognised header");
      }
      filter_count = (fields.size() - 4) / 5;
      record.tracks.resize(filter_count);
      header_seen = true;
      continue;
    }

    if (fields.size() != 4 + 5 * filter_count) {
      throw std::runtime_error("csv: line " + std::to_string(line_no) + ": expected " +
                               std::to_string(4 + 5 * filter_count) + " fields, got " +
                               std::to_string(fields.size()));
    }
    record.t.push_back(parse_double(fields[0], line_no));
    record.truth.emplace_back(parse_double(fields[1], line_no), parse_double(fields[2], line_no),
                              parse_double(fields[3], line_no));
    for (size_t i = 0; i < filter_count; ++i) {
      const size_t base = 4 + 5 * i;
      RunRecord::Track& track = record.tracks[i];
      track.estimate.emplace_back(parse_double(fields[base], line_no),
                                  parse_double(fields[base + 1], line_no),
                                  parse_double(fields[base + 2], line_no));
      track.pos_err.push_back(parse_double(fields[base + 3], line_no));
      track.ang_err.push_back(parse_double(fields[base + 4], line_no));
    }
  }

  if (!header_seen) throw std::runtime_error("csv: no header line found");
  return record;
}

RunRecord parse_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("csv: cannot open for reading: " + path);
  return parse_csv(in);
}

void write_divergence_csv(std::ostream& out, const DivergenceReport& report) {
  out << "# max_pos=" << format_value(report.max_pos) << " max_ang="
      << format_value(report.max_ang) << " max_sigma=" << format_value(report.max_sigma) << '\n';
  out << "t,pos_divergence,ang_divergence,sigma_divergence\n";
  for (size_t k = 0; k < report.rows(); ++k) {
    write_row(out, {report.t[k], report.pos_divergence[k], report.ang_divergence[k],
                    report.sigma_divergence[k]});
  }
}

void write_precision_study_csv(std::ostream& out, const PrecisionStudy& study) {
  out << "# columns are position deviation from the double-precision reference\n";
  out << "# base_gains q=(" << format_value(study.options.heading_q) << ','
      << format_value(study.options.position_q) << ") sigma0=("
      << format_value(study.options.heading_sigma0) << ','
      << format_value(study.options.position_sigma0) << ") r="
      << format_value(study.options.r_scale) << " (heading, position blocks)\n";
  for (const OriginStudyRow& row : study.rows) {
    out << "# origin=(" << format_value(row.origin.theta) << ',' << format_value(row.origin.x.x())
        << ',' << format_value(row.origin.x.y())
        << ") mean_pos=" << format_value(row.mean_pos_deviation)
        << " max_pos=" << format_value(row.max_pos_deviation)
        << " mean_ang=" << format_value(row.mean_ang_deviation)
        << " max_ang=" << format_value(row.max_ang_deviation) << '\n';
  }
  out << "t";
  for (size_t i = 1; i <= study.deviation.size(); ++i) out << ",pos_dev_" << i;
  out << '\n';
  std::vector<double> row;
  for (size_t k = 0; k < study.t.size(); ++k) {
    row.clear();
    row.push_back(study.t[k]);
    for (const auto& series : study.deviation) row.push_back(series[k]);
    write_row(out, row);
  }
}

}  // namespace eqf::sim
