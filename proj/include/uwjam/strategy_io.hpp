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

#ifndef UWJAM_STRATEGY_IO_HPP_
#define UWJAM_STRATEGY_IO_HPP_

#include <cstdint>
#include <json.hpp>
#include <string>
#include <string_view>

#include "uwjam/game_solver.hpp"

namespace uwjam {

inline constexpr std::string_view kTableFormat = "uwjam-strategy-table";
inline constexpr int kTableVersion = 1;

nlohmann::json to_json(const GameConfig& config);
GameConfig game_config_from_json(const nlohmann::json& j);

struct ExportOptions {
  // Also write the value of every intermediate horizon level, so the
  // loaded table can rebuild any stage matrix.
  bool horizon_values = false;
  // Free-form provenance block (the scenario that produced the table).
  nlohmann::json scenario;
};

struct TableDocument {
  StrategyTable table;
  nlohmann::json scenario;
};

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);

std::string serialize_table(const StrategyTable& table, const ExportOptions& options = {});
// Throws IoError on malformed, truncated, wrong-version or corrupted input.
TableDocument parse_table(std::string_view text);

void export_table(const StrategyTable& table, const std::string& path,
                  const ExportOptions& options = {});
TableDocument load_table(const std::string& path);

}  // namespace uwjam

#endif  // UWJAM_STRATEGY_IO_HPP_
