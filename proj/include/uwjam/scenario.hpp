// Copyright 2026 The uwjam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UWJAM_SCENARIO_HPP_
#define UWJAM_SCENARIO_HPP_

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uwjam/channel_model.hpp"
#include "uwjam/game_solver.hpp"

namespace uwjam {

// Everything needed to reproduce one experiment. Defaults are the
// model-based scenario: 26 kHz carrier, 16 kHz band, 1 kbps, 64-byte
// payload, 180 dB re 1 uPa for both nodes, k = 1.75, s = 1, w = 3 m/s,
// d_TR = 78 m, K = 4, batteries 200/200, alpha = 0.4, Gamma = 30.
struct ScenarioConfig {
  AcousticEnvironment environment{};
  LinkSettings link{};

  int k_info = 4;
  int b_t0 = 200;
  int b_j0 = 200;
  double alpha = 0.4;
  std::optional<int> horizon = 30;
  double discount = 1.0;

  PerMode per_mode = PerMode::kUncoded;
  std::optional<std::string> empirical_table_path;
  double empirical_per_clear = 0.04;

  double distance_m = 120.0;  // jammer distance for single-table commands
  std::vector<double> sweep_m = default_sweep();

  static std::vector<double> default_sweep();  // 20..180 m, step 10

  // Throws ConfigError.
  void validate() const;

  // Builds the PER resolver for `mode` (defaults to per_mode). Loads the
  // empirical table from disk when needed.
  ErrorModelProvider error_model_provider(std::optional<PerMode> mode = std::nullopt) const;

  GameConfig game_config(const ErrorModel& error_model) const;

  bool operator==(const ScenarioConfig&) const = default;
};

nlohmann::json to_json(const ScenarioConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
ScenarioConfig scenario_from_json(const nlohmann::json& j);
// Throws ConfigError carrying the line number of JSON syntax errors.
ScenarioConfig parse_scenario(std::string_view text);
// Relative empirical table paths are resolved against the file's directory.
ScenarioConfig load_scenario(const std::string& path);

}  // namespace uwjam

#endif  // UWJAM_SCENARIO_HPP_
