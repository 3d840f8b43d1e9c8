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

#include "uwjam/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "uwjam/errors.hpp"

namespace uwjam {
namespace {

using nlohmann::json;

void RejectUnknown(const json& j, std::string_view section, std::set<std::string> known) {
  if (!j.is_object())
    throw ConfigError("config section '" + std::string(section) + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError("unknown config key '" + std::string(section) +
                        (section.empty() ? "" : ".") + key + "'");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::vector<double> ScenarioConfig::default_sweep() {
  std::vector<double> sweep;
  for (int d = 20; d <= 180; d += 10) sweep.push_back(d);
  return sweep;
}

void ScenarioConfig::validate() const {
  try {
    environment.validate();
    link.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  if (!(distance_m > 0.0)) throw ConfigError("distance_m must be positive");
  for (double d : sweep_m) {
    if (!(d > 0.0)) throw ConfigError("sweep distances must be positive");
  }
  if (per_mode == PerMode::kEmpirical && !empirical_table_path) {
    throw ConfigError("per_mode 'empirical' needs empirical.table_path");
  }
  if (!(empirical_per_clear >= 0.0 && empirical_per_clear <= 1.0)) {
    throw ConfigError("empirical.per_clear must lie in [0, 1]");
  }
  game_config({}).validate();
}

ErrorModelProvider ScenarioConfig::error_model_provider(std::optional<PerMode> mode) const {
  const PerMode m = mode.value_or(per_mode);
  std::optional<EmpiricalPerTable> table;
  if (m == PerMode::kEmpirical) {
    if (!empirical_table_path) throw ConfigError("empirical PER mode needs empirical.table_path");
    table = EmpiricalPerTable::load_csv(*empirical_table_path, empirical_per_clear);
  }
  try {
    return ErrorModelProvider(environment, link, m, std::move(table));
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

GameConfig ScenarioConfig::game_config(const ErrorModel& error_model) const {
  GameConfig c;
  c.k_info = k_info;
  c.b_t0 = b_t0;
  c.b_j0 = b_j0;
  c.alpha = alpha;
  c.horizon = horizon;
  c.discount = discount;
  c.error_model = error_model;
  return c;
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["environment"] = {{"carrier_khz", c.environment.carrier_khz},
                      {"bandwidth_hz", c.environment.bandwidth_hz},
                      {"spreading_exp", c.environment.spreading_exp},
                      {"shipping", c.environment.shipping},
                      {"wind_speed", c.environment.wind_speed}};
  j["link"] = {{"d_tr_m", c.link.d_tr_m},
               {"tx_power_db", c.link.tx_power_db},
               {"jam_power_db", c.link.jam_power_db},
               {"bitrate_bps", c.link.bitrate_bps},
               {"packet_bits", c.link.packet_bits},
               {"rs", {{"n", c.link.rs.n}, {"k", c.link.rs.k}, {"sym_bits", c.link.rs.sym_bits}}}};
  j["game"] = {{"k_info", c.k_info},
               {"b_t0", c.b_t0},
               {"b_j0", c.b_j0},
               {"alpha", c.alpha},
               {"horizon", c.horizon ? json(*c.horizon) : json("inf")},
               {"discount", c.discount}};
  j["per_mode"] = to_string(c.per_mode);
  j["empirical"] = {
      {"table_path", c.empirical_table_path ? json(*c.empirical_table_path) : json(nullptr)},
      {"per_clear", c.empirical_per_clear}};
  j["distance_m"] = c.distance_m;
  j["sweep_m"] = c.sweep_m;
  return j;
}

ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig c;
  try {
    RejectUnknown(
        j, "", {"environment", "link", "game", "per_mode", "empirical", "distance_m", "sweep_m"});
    if (j.contains("environment")) {
      const json& e = j.at("environment");
      RejectUnknown(e, "environment",
                    {"carrier_khz", "bandwidth_hz", "spreading_exp", "shipping", "wind_speed"});
      Read(e, "carrier_khz", c.environment.carrier_khz);
      Read(e, "bandwidth_hz", c.environment.bandwidth_hz);
      Read(e, "spreading_exp", c.environment.spreading_exp);
      Read(e, "shipping", c.environment.shipping);
      Read(e, "wind_speed", c.environment.wind_speed);
    }
    if (j.contains("link")) {
      const json& l = j.at("link");
      RejectUnknown(l, "link",
                    {"d_tr_m", "tx_power_db", "jam_power_db", "bitrate_bps", "packet_bits", "rs"});
      Read(l, "d_tr_m", c.link.d_tr_m);
      Read(l, "tx_power_db", c.link.tx_power_db);
      Read(l, "jam_power_db", c.link.jam_power_db);
      Read(l, "bitrate_bps", c.link.bitrate_bps);
      Read(l, "packet_bits", c.link.packet_bits);
      if (l.contains("rs")) {
        const json& rs = l.at("rs");
        RejectUnknown(rs, "link.rs", {"n", "k", "sym_bits"});
        Read(rs, "n", c.link.rs.n);
        Read(rs, "k", c.link.rs.k);
        Read(rs, "sym_bits", c.link.rs.sym_bits);
      }
    }
    if (j.contains("game")) {
      const json& g = j.at("game");
      RejectUnknown(g, "game", {"k_info", "b_t0", "b_j0", "alpha", "horizon", "discount"});
      Read(g, "k_info", c.k_info);
      Read(g, "b_t0", c.b_t0);
      Read(g, "b_j0", c.b_j0);
      Read(g, "alpha", c.alpha);
      Read(g, "discount", c.discount);
      if (g.contains("horizon")) {
        const json& h = g.at("horizon");
        if (h.is_string()) {
          if (h.get<std::string>() != "inf")
            throw ConfigError("game.horizon must be an integer or \"inf\"");
          c.horizon.reset();
        } else {
          c.horizon = h.get<int>();
        }
      }
    }
    if (j.contains("per_mode"))
      c.per_mode = per_mode_from_string(j.at("per_mode").get<std::string>());
    if (j.contains("empirical")) {
      const json& e = j.at("empirical");
      RejectUnknown(e, "empirical", {"table_path", "per_clear"});
      if (e.contains("table_path") && !e.at("table_path").is_null()) {
        c.empirical_table_path = e.at("table_path").get<std::string>();
      }
      Read(e, "per_clear", c.empirical_per_clear);
    }
    Read(j, "distance_m", c.distance_m);
    Read(j, "sweep_m", c.sweep_m);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ScenarioConfig parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw ConfigError("config line " + std::to_string(line) + ": " + e.what());
  }
  return scenario_from_json(j);
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ScenarioConfig c = parse_scenario(buffer.str());
  if (c.empirical_table_path) {
    const std::filesystem::path table(*c.empirical_table_path);
    if (table.is_relative()) {
      c.empirical_table_path = (std::filesystem::path(path).parent_path() / table).string();
    }
  }
  return c;
}

}  // namespace uwjam
