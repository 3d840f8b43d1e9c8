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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uwjam/channel_model.hpp"
#include "uwjam/game_solver.hpp"
#include "uwjam/performance_analysis.hpp"
#include "uwjam/scenario.hpp"

using namespace uwjam;

namespace {

// Every state plays pure n_t (capped by the battery) against pure n_j.
StrategyTable ForcedTable(GameConfig c, int n_t, int n_j) {
  StrategyTable t(c);
  for (int b_t = c.k_info; b_t <= c.b_t0; ++b_t) {
    for (int b_j = 0; b_j <= c.b_j0; ++b_j) {
      StateEntry& e = t.at({b_t, b_j});
      e.strategy_t = MixedStrategy{std::min(n_t, b_t), {1.0}};
      e.strategy_j = MixedStrategy{std::min(n_j, b_j), {1.0}};
    }
  }
  return t;
}

GameConfig Mid() {
  GameConfig c;
  c.k_info = 3;
  c.b_t0 = 60;
  c.b_j0 = 60;
  c.horizon = 8;
  c.error_model = {0.02, 0.35};
  return c;
}

}  // namespace

TEST_CASE("forced pure strategies give the lifetime bounds") {
  GameConfig c;
  c.error_model = {0.0, 0.9};
  CHECK(expected_lifetime(ForcedTable(c, 4, 0), {200, 200}) == 50.0);
  CHECK(expected_lifetime(ForcedTable(c, 8, 3), {200, 200}) == 25.0);
  CHECK(expected_lifetime(ForcedTable(c, 4, 0), {3, 200}) == 0.0);
  const StrategyTable forced = ForcedTable(c, 4, 0);
  const PerformanceEvaluator eval(forced);
  CHECK(eval.packets_per_subgame({200, 200}) == doctest::Approx(4.0));
  CHECK_THROWS_AS(eval.expected_lifetime({201, 0}), std::domain_error);
}

TEST_CASE("success probability limits") {
  GameConfig c;
  c.b_j0 = 0;
  c.error_model = {0.0, 0.9};
  CHECK(success_probability(ForcedTable(c, 4, 0), {200, 0}) == doctest::Approx(1.0));
  c.error_model = {1.0, 1.0};
  CHECK(success_probability(ForcedTable(c, 6, 0), {200, 0}) == 0.0);
}

TEST_CASE("lifetime stays within the pure-strategy bounds") {
  const StrategyTable t = solve_full_game(Mid());
  const PerformanceEvaluator eval(t);
  t.for_each_state([&](GameState s, const StateEntry&) {
    const double l = eval.expected_lifetime(s);
    CHECK(l >= s.b_t / 6 - 1e-9);
    CHECK(l <= s.b_t / 3 + 1e-9);
    CHECK(eval.success_probability(s) >= 0.0);
    CHECK(eval.success_probability(s) <= 1.0);
  });
}

TEST_CASE("deterministic simulation") {
  GameConfig c;
  c.b_j0 = 0;
  c.error_model = {0.0, 0.5};
  SimulationOptions o;
  o.runs = 50;
  const SimulationResult r = simulate(ForcedTable(c, 5, 0), o);
  for (const RunRecord& rec : r.records) {
    CHECK(rec.lifetime == 200 / 5);
    CHECK(rec.successes == rec.lifetime);
  }
  CHECK(r.lifetime_ci == 0.0);
  o.runs = 0;
  CHECK_THROWS_AS(simulate(ForcedTable(c, 5, 0), o), std::domain_error);
}

TEST_CASE("simulation is reproducible and matches the recursions") {
  const StrategyTable t = solve_full_game(Mid());
  SimulationOptions o;
  o.runs = 10000;
  o.seed = 42;
  const SimulationResult a = simulate(t, o);
  const SimulationResult b = simulate(t, o);
  CHECK(a.mean_lifetime == b.mean_lifetime);
  CHECK(a.success_prob == b.success_prob);
  CHECK(a.lifetime_ci > 0.0);
  const PerformanceEvaluator eval(t);
  const GameState init{60, 60};
  const double three_sigma = 3.0 / o.confidence_z;
  CHECK(std::abs(a.mean_lifetime - eval.expected_lifetime(init)) <= a.lifetime_ci * three_sigma);
  CHECK(std::abs(a.success_prob - eval.success_probability(init)) <=
        a.success_prob_ci * three_sigma);
  CHECK(std::abs(a.success_rate - eval.pooled_success_rate(init)) <= a.success_ci * three_sigma);
  o.seed = 43;
  CHECK(simulate(t, o).mean_lifetime != a.mean_lifetime);
}

TEST_CASE("sensitivity sweep") {
  const StrategyTable t = solve_full_game(Mid());
  SimulationOptions o;
  o.runs = 3000;
  o.seed = 9;
  const SimulationResult base = simulate(t, o);
  const SimulationResult zero = sensitivity_sweep(t, {0.0, 3000}, 9);
  CHECK(zero.mean_lifetime == base.mean_lifetime);
  CHECK(zero.success_prob == base.success_prob);
  CHECK(zero.success_rate == base.success_rate);
  for (double sigma : {0.05, 0.1, 0.3}) {
    const SimulationResult r = sensitivity_sweep(t, {sigma, 3000}, 9);
    CHECK(r.mean_lifetime == base.mean_lifetime);
    CHECK(r.sigma == sigma);
  }
  CHECK_THROWS_AS(sensitivity_sweep(t, {-0.1, 10}, 1), std::domain_error);
}

TEST_CASE("perturbation clamps and keeps blocked no better than clear") {
  CHECK(perturb_error_model({0.0, 1.0}, -0.3, 0.4) == ErrorModel{0.0, 1.0});
  CHECK(perturb_error_model({0.2, 0.3}, 0.5, -0.2) == ErrorModel{0.7, 0.7});
  const ErrorModel m = perturb_error_model({0.1, 0.5}, 0.01, -0.02);
  CHECK(m.p_clear == doctest::Approx(0.11));
  CHECK(m.p_blocked == doctest::Approx(0.48));
}

TEST_CASE("perturbing a near-certain jammer does not hurt the transmitter") {
  GameConfig c = Mid();
  c.error_model = {0.0, 0.999};
  const StrategyTable t = solve_full_game(c);
  const SimulationResult base = sensitivity_sweep(t, {0.0, 10000}, 3);
  const SimulationResult noisy = sensitivity_sweep(t, {0.1, 10000}, 3);
  CHECK(noisy.success_prob >= base.success_prob - 3 * noisy.success_prob_ci / 1.96);
}

TEST_CASE("mismatch evaluation") {
  const GameConfig base = Mid();
  const ErrorModel m{0.02, 0.35};
  const AnalysisReport same = mismatch_evaluation(base, m, m);
  const AnalysisReport direct = analyze(solve_full_game(base));
  CHECK(same.lifetime == direct.lifetime);
  CHECK(same.success_prob == direct.success_prob);

  const AnalysisReport dummy = mismatch_evaluation(base, m, m, base.k_info + 1);
  CHECK(dummy.initial_strategy_j.prob(base.k_info + 1) == 1.0);
  CHECK(dummy.config.fixed_jam_slots == base.k_info + 1);

  // An optimistic model leads to less redundancy.
  const AnalysisReport optimistic = mismatch_evaluation(base, {0.02, 0.1}, m);
  CHECK(optimistic.initial_strategy_t.mean() <= direct.initial_strategy_t.mean());
  CHECK(optimistic.true_model == m);
}

TEST_CASE("far jammer: send exactly K packets") {
  const ScenarioConfig sc;
  const StrategyTable t = solve_full_game(sc.game_config(sc.error_model_provider().at(120.0)));
  const GameState init{200, 200};
  CHECK(t.at(init).strategy_t.prob(4) > 0.99);
  CHECK(success_probability(t, init) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(expected_lifetime(t, init) == doctest::Approx(50.0).epsilon(0.02));
}

TEST_CASE("coded-model players under-protect against the empirical channel") {
  const ScenarioConfig sc;
  const EmpiricalPerTable lake =
      EmpiricalPerTable::from_csv("distance_m,per_blocked\n20,1\n60,0.5\n120,0.06\n", 0.04);
  const ErrorModel truth =
      ErrorModelProvider(sc.environment, sc.link, PerMode::kEmpirical, lake).at(60.0);
  const GameConfig base = sc.game_config({});
  const AnalysisReport coded =
      mismatch_evaluation(base, sc.error_model_provider(PerMode::kCoded).at(60.0), truth);
  const AnalysisReport uncoded =
      mismatch_evaluation(base, sc.error_model_provider(PerMode::kUncoded).at(60.0), truth);
  CHECK(coded.initial_strategy_t.mean() < uncoded.initial_strategy_t.mean());
  CHECK(coded.true_model == truth);
}
