#include "eqf/sim/config_io.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <stdexcept>

namespace eqf::sim {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: " + path + ": " + what);
}

void reject_unknown_keys(const Json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(path + "." + item.key(), "unknown key");
  }
}

double require_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

GroupElementd parse_pose(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object {\"theta\": .., \"x\": [..]}");
  reject_unknown_keys(j, path, {"theta", "x"});
  GroupElementd pose;
  if (j.contains("theta")) pose.theta = require_number(j["theta"], path + ".theta");
  if (j.contains("x")) {
    const Json& x = j["x"];
    if (!x.is_array() || x.size() != 2) fail(path + ".x", "expected an array of 2 numbers");
    pose.x = Vec2<double>(require_number(x[0], path + ".x[0]"),
                          require_number(x[1], path + ".x[1]"));
  }
  return GroupElementd(pose.theta, pose.x);
}

AlgebraVectord parse_velocity(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object {\"omega\": .., \"v\": [..]}");
  reject_unknown_keys(j, path, {"omega", "v"});
  AlgebraVectord u = AlgebraVectord::Zero();
  if (j.contains("omega")) u.omega = require_number(j["omega"], path + ".omega");
  if (j.contains("v")) {
    const Json& v = j["v"];
    if (!v.is_array() || v.size() != 2) fail(path + ".v", "expected an array of 2 numbers");
    u.v = Vec2<double>(require_number(v[0], path + ".v[0]"),
                       require_number(v[1], path + ".v[1]"));
  }
  return u;
}

/// Scalar s means s * identity; otherwise a full row-major nested array of
/// the exact requested size.
MatX<double> parse_matrix(const Json& j, Eigen::Index rows, Eigen::Index cols,
                          const std::string& path) {
  if (j.is_number()) {
    if (rows != cols) fail(path, "scalar shorthand needs a square matrix");
    return j.get<double>() * MatX<double>::Identity(rows, cols);
  }
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    fail(path, "expected a scalar or an array of " + std::to_string(rows) + " rows");
  }
  MatX<double> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(path + "[" + std::to_string(r) + "]",
           "expected an array of " + std::to_string(cols) + " numbers");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = require_number(row[static_cast<size_t>(c)],
                               path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

ChartKind parse_chart_kind(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected \"component\" or \"exponential\"");
  const std::string name = j.get<std::string>();
  if (name == "component") return ChartKind::Component;
  if (name == "exponential") return ChartKind::Exponential;
  fail(path, "unknown chart kind '" + name + "'");
}

Precision parse_precision(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected \"single\" or \"double\"");
  const std::string name = j.get<std::string>();
  if (name == "single") return Precision::Single;
  if (name == "double") return Precision::Double;
  fail(path, "unknown precision '" + name + "'");
}

FilterSetup parse_filter(const Json& j, Eigen::Index out_dim, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a filter object");
  reject_unknown_keys(j, path, {"chart", "origin", "q", "r", "sigma0", "x_hat0"});
  FilterSetup f;
  f.r = kDefaultRScale * MatX<double>::Identity(out_dim, out_dim);
  f.q = kDefaultQScale * Mat3<double>::Identity();
  f.sigma0 = kDefaultSigma0Scale * Mat3<double>::Identity();
  if (j.contains("chart")) f.chart_kind = parse_chart_kind(j["chart"], path + ".chart");
  if (j.contains("origin")) f.origin = parse_pose(j["origin"], path + ".origin");
  if (j.contains("q")) f.q = parse_matrix(j["q"], 3, 3, path + ".q");
  if (j.contains("r")) f.r = parse_matrix(j["r"], out_dim, out_dim, path + ".r");
  if (j.contains("sigma0")) f.sigma0 = parse_matrix(j["sigma0"], 3, 3, path + ".sigma0");
  if (j.contains("x_hat0")) f.x_hat0 = parse_pose(j["x_hat0"], path + ".x_hat0");
  return f;
}

Json pose_to_json(const GroupElementd& pose) {
  return Json{{"theta", pose.theta}, {"x", {pose.x.x(), pose.x.y()}}};
}

Json matrix_to_json(const MatX<double>& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  reject_unknown_keys(j, "config",
                      {"initial_pose", "velocity", "duration", "dt", "landmark_count",
                       "landmark_seed", "noise_std", "precision", "consistent_gains", "filters"});

  ScenarioConfig config = default_scenario();
  if (j.contains("initial_pose")) {
    config.initial_pose = parse_pose(j["initial_pose"], "config.initial_pose");
  }
  if (j.contains("velocity")) {
    config.velocity = parse_velocity(j["velocity"], "config.velocity");
  }
  if (j.contains("duration")) config.duration = require_number(j["duration"], "config.duration");
  if (j.contains("dt")) config.dt = require_number(j["dt"], "config.dt");
  if (j.contains("landmark_count")) {
    const Json& c = j["landmark_count"];
    if (!c.is_number_integer()) fail("config.landmark_count", "expected an integer");
    config.landmark_count = c.get<int>();
  }
  if (j.contains("landmark_seed")) {
    const Json& s = j["landmark_seed"];
    if (!s.is_number_unsigned() && !s.is_number_integer()) {
      fail("config.landmark_seed", "expected a non-negative integer");
    }
    config.landmark_seed = s.get<std::uint64_t>();
  }
  if (j.contains("noise_std")) config.noise_std = require_number(j["noise_std"], "config.noise_std");
  if (j.contains("precision")) config.precision = parse_precision(j["precision"], "config.precision");
  if (j.contains("consistent_gains")) {
    const Json& g = j["consistent_gains"];
    if (!g.is_boolean()) fail("config.consistent_gains", "expected a boolean");
    config.consistent_gains = g.get<bool>();
  }

  const Eigen::Index out_dim = 2 * std::max(config.landmark_count, 1);
  if (j.contains("filters")) {
    const Json& filters = j["filters"];
    if (!filters.is_array()) fail("config.filters", "expected an array");
    config.filters.clear();
    for (size_t i = 0; i < filters.size(); ++i) {
      config.filters.push_back(
          parse_filter(filters[i], out_dim, "config.filters[" + std::to_string(i) + "]"));
    }
  } else {
    // The stock filters stay, but their default R must track a changed
    // landmark count.
    for (FilterSetup& f : config.filters) {
      if (f.r.rows() != out_dim) {
        f.r = kDefaultRScale * MatX<double>::Identity(out_dim, out_dim);
      }
    }
  }

  validate_scenario(config);
  return config;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scenario(text);
}

std::string scenario_to_json(const ScenarioConfig& config) {
  Json j;
  j["initial_pose"] = pose_to_json(config.initial_pose);
  j["velocity"] = Json{{"omega", config.velocity.omega},
                       {"v", {config.velocity.v.x(), config.velocity.v.y()}}};
  j["duration"] = config.duration;
  j["dt"] = config.dt;
  j["landmark_count"] = config.landmark_count;
  j["landmark_seed"] = config.landmark_seed;
  j["noise_std"] = config.noise_std;
  j["precision"] = precision_name(config.precision);
  j["consistent_gains"] = config.consistent_gains;
  Json filters = Json::array();
  for (const FilterSetup& f : config.filters) {
    Json jf;
    jf["chart"] = chart_kind_name(f.chart_kind);
    jf["origin"] = pose_to_json(f.origin);
    jf["q"] = matrix_to_json(f.q);
    jf["r"] = matrix_to_json(f.r);
    jf["sigma0"] = matrix_to_json(f.sigma0);
    jf["x_hat0"] = pose_to_json(f.x_hat0);
    filters.push_back(std::move(jf));
  }
  j["filters"] = std::move(filters);
  return j.dump(2) + "\n";
}

void save_scenario_file(const std::string& path, const ScenarioConfig& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("config: cannot open for writing: " + path);
  out << scenario_to_json(config);
  if (!out) throw std::runtime_error("config: write failed: " + path);
}

}  // namespace eqf::sim
