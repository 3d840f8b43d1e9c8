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

#include "uwjam/strategy_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "uwjam/errors.hpp"

namespace uwjam {
namespace {

using nlohmann::json;

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string Checksum(const json& states) { return "fnv1a64:" + Hex64(fnv1a64(states.dump())); }

std::vector<double> ReadProbs(const json& j, std::size_t expected, const char* field, GameState s) {
  auto probs = j.at(field).get<std::vector<double>>();
  if (probs.size() != expected) {
    throw IoError(std::string("strategy table: '") + field + "' at state (" +
                  std::to_string(s.b_t) + ", " + std::to_string(s.b_j) +
                  ") does not match the action set");
  }
  return probs;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json to_json(const GameConfig& c) {
  json j;
  j["k_info"] = c.k_info;
  j["b_t0"] = c.b_t0;
  j["b_j0"] = c.b_j0;
  j["alpha"] = c.alpha;
  j["horizon"] = c.horizon ? json(*c.horizon) : json("inf");
  j["discount"] = c.discount;
  j["p_clear"] = c.error_model.p_clear;
  j["p_blocked"] = c.error_model.p_blocked;
  j["fixed_jam_slots"] = c.fixed_jam_slots ? json(*c.fixed_jam_slots) : json(nullptr);
  return j;
}

GameConfig game_config_from_json(const json& j) {
  try {
    GameConfig c;
    c.k_info = j.at("k_info").get<int>();
    c.b_t0 = j.at("b_t0").get<int>();
    c.b_j0 = j.at("b_j0").get<int>();
    c.alpha = j.at("alpha").get<double>();
    const json& h = j.at("horizon");
    if (h.is_string()) {
      if (h.get<std::string>() != "inf") throw ConfigError("horizon must be an integer or \"inf\"");
      c.horizon.reset();
    } else {
      c.horizon = h.get<int>();
    }
    c.discount = j.at("discount").get<double>();
    c.error_model.p_clear = j.at("p_clear").get<double>();
    c.error_model.p_blocked = j.at("p_blocked").get<double>();
    if (j.contains("fixed_jam_slots") && !j.at("fixed_jam_slots").is_null()) {
      c.fixed_jam_slots = j.at("fixed_jam_slots").get<int>();
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("game config: ") + e.what());
  }
}

std::string serialize_table(const StrategyTable& table, const ExportOptions& options) {
  const GameConfig& c = table.config();
  const int top = c.effective_horizon();
  json states = json::array();
  table.for_each_state([&](GameState s, const StateEntry& e) {
    json row;
    row["b_t"] = s.b_t;
    row["b_j"] = s.b_j;
    row["strat_t"] = e.strategy_t.probs;
    row["strat_j"] = e.strategy_j.probs;
    row["value"] = e.value_t;
    if (options.horizon_values) {
      std::vector<double> values;
      for (int gamma = 1; gamma <= top; ++gamma) values.push_back(table.horizon_value(s, gamma));
      row["horizon_values"] = values;
    }
    states.push_back(std::move(row));
  });
  json doc;
  doc["format"] = kTableFormat;
  doc["version"] = kTableVersion;
  doc["config"] = to_json(c);
  if (!options.scenario.is_null()) doc["scenario"] = options.scenario;
  doc["state_count"] = table.state_count();
  doc["checksum"] = Checksum(states);
  doc["states"] = std::move(states);
  return doc.dump() + "\n";
}

TableDocument parse_table(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw IoError("strategy table is empty");
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("strategy table is truncated or malformed: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != kTableFormat) {
      throw IoError("not a strategy table document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kTableVersion) {
      throw IoError("strategy table version " + std::to_string(version) +
                    " unsupported (expected " + std::to_string(kTableVersion) + ")");
    }
    const json& states = doc.at("states");
    if (doc.at("checksum").get<std::string>() != Checksum(states)) {
      throw IoError("strategy table checksum mismatch");
    }

    TableDocument out{StrategyTable(game_config_from_json(doc.at("config"))),
                      doc.value("scenario", json())};
    StrategyTable& table = out.table;
    const GameConfig& c = table.config();
    if (!states.is_array() || states.size() != table.state_count() ||
        doc.at("state_count").get<std::size_t>() != table.state_count()) {
      throw IoError("strategy table does not list every non-terminal state");
    }
    const int top = c.effective_horizon();
    bool with_horizons = !states.empty() && states.front().contains("horizon_values");
    std::size_t i = 0;
    table.for_each_state([&](GameState s, const StateEntry&) {
      const json& row = states[i++];
      if (row.at("b_t").get<int>() != s.b_t || row.at("b_j").get<int>() != s.b_j) {
        throw IoError("strategy table states out of order");
      }
      const ActionSets sets = action_sets(s, c);
      StateEntry& e = table.at(s);
      e.strategy_t = {sets.transmitter.front(),
                      ReadProbs(row, sets.transmitter.size(), "strat_t", s)};
      e.strategy_j = {sets.jammer.front(), ReadProbs(row, sets.jammer.size(), "strat_j", s)};
      e.value_t = row.at("value").get<double>();
      if (with_horizons) {
        const auto values = row.at("horizon_values").get<std::vector<double>>();
        if (static_cast<int>(values.size()) != top) {
          throw IoError("strategy table horizon_values length mismatch");
        }
        for (int gamma = 1; gamma <= top; ++gamma)
          table.set_horizon_value(s, gamma, values[gamma - 1]);
      }
    });
    if (!with_horizons) table.drop_horizon_values();
    return out;
  } catch (const json::exception& e) {
    throw IoError(std::string("strategy table is malformed: ") + e.what());
  } catch (const ConfigError& e) {
    throw IoError(std::string("strategy table config is invalid: ") + e.what());
  }
}

void export_table(const StrategyTable& table, const std::string& path,
                  const ExportOptions& options) {
  const std::string text = serialize_table(table, options);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

TableDocument load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open strategy table '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_table(buffer.str());
}

}  // namespace uwjam
