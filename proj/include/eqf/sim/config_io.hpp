#pragma once

#include "eqf/sim/scenario.hpp"

#include <string>

namespace eqf::sim {

/// Parses a JSON scenario object mirroring ScenarioConfig field for field:
///
///   {
///     "initial_pose": {"theta": 0.0, "x": [0.7, 0.5]},
///     "velocity": {"omega": 0.4, "v": [0.5, 0.0]},
///     "duration": 20.0, "dt": 0.1,
///     "landmark_count": 5, "landmark_seed": 42, "noise_std": 0.0,
///     "precision": "double", "consistent_gains": true,
///     "filters": [{"chart": "component", "origin": {...},
///                  "q": 0.01, "r": 0.1, "sigma0": 1.0, "x_hat0": {...}}]
///   }
///
/// Matrix-valued entries (q, r, sigma0) accept either a scalar s, meaning
/// s * identity of the proper size, or a full row-major nested array. Every
/// field is optional and defaults to the stock scenario's value; unknown keys
/// are rejected. Throws std::invalid_argument with the offending key path.
[[nodiscard]] ScenarioConfig parse_scenario(const std::string& json_text);
[[nodiscard]] ScenarioConfig load_scenario_file(const std::string& path);

/// Serialises the configuration back to JSON with all fields explicit and
/// matrices written in full, so saved files reload to an identical scenario.
[[nodiscard]] std::string scenario_to_json(const ScenarioConfig& config);
void save_scenario_file(const std::string& path, const ScenarioConfig& config);

}  // namespace eqf::sim
