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
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "uwjam/errors.hpp"
#include "uwjam/game_solver.hpp"
#include "uwjam/strategy_io.hpp"

using namespace uwjam;

namespace {

StrategyTable SmallTable() {
  GameConfig c;
  c.k_info = 3;
  c.b_t0 = 24;
  c.b_j0 = 18;
  c.horizon = 4;
  c.alpha = 0.3;
  c.error_model = {0.013, 0.77};
  return solve_full_game(c);
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("uwjam_test_" + name)).string();
}

}  // namespace

TEST_CASE("serialize and parse round trip") {
  const StrategyTable t = SmallTable();
  const TableDocument doc = parse_table(serialize_table(t));
  CHECK(doc.table.config() == t.config());
  doc.table.for_each_state([&](GameState s, const StateEntry& e) { CHECK(e == t.at(s)); });
  CHECK_FALSE(doc.table.has_horizon_values());
  CHECK(doc.scenario.is_null());

  ExportOptions with;
  with.horizon_values = true;
  with.scenario = {{"note", "x"}};
  const TableDocument full = parse_table(serialize_table(t, with));
  CHECK(full.table == t);
  CHECK(full.scenario["note"] == "x");
  CHECK(serialize_table(full.table, with) == serialize_table(t, with));
}

TEST_CASE("file round trip") {
  const StrategyTable t = SmallTable();
  const std::string path = TempPath("roundtrip.json");
  export_table(t, path, {true, {}});
  CHECK(load_table(path).table == t);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_table(path), IoError);
}

TEST_CASE("malformed tables are rejected") {
  const std::string text = serialize_table(SmallTable());
  CHECK_THROWS_AS(parse_table(""), IoError);
  CHECK_THROWS_AS(parse_table(text.substr(0, text.size() / 2)), IoError);

  nlohmann::json j = nlohmann::json::parse(text);
  nlohmann::json bad = j;
  bad["version"] = 99;
  CHECK_THROWS_AS(parse_table(bad.dump()), IoError);
  bad = j;
  bad["states"][3]["value"] = bad["states"][3]["value"].get<double>() + 1e-9;
  CHECK_THROWS_AS(parse_table(bad.dump()), IoError);
  bad = j;
  bad["format"] = "something-else";
  CHECK_THROWS_AS(parse_table(bad.dump()), IoError);
  bad = j;
  bad["states"].erase(bad["states"].size() - 1);
  CHECK_THROWS_AS(parse_table(bad.dump()), IoError);
}

TEST_CASE("checksum") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("full-size table enumerates every non-terminal state") {
  const StrategyTable t = solve_full_game(GameConfig{});
  const nlohmann::json j = nlohmann::json::parse(serialize_table(t));
  CHECK(j["states"].size() == 197u * 201u);
  CHECK(j["state_count"] == 197 * 201);
}
