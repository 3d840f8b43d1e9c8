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

#ifndef UWJAM_PERFORMANCE_ANALYSIS_HPP_
#define UWJAM_PERFORMANCE_ANALYSIS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "uwjam/game_solver.hpp"

namespace uwjam {

// Analytic figures of merit for a solved table, evaluated under a "true"
// error model that may differ from the one the table was solved with.
//
// Lifetime follows E[L|S] = sum_S' (1 + E[L|S']) P(S'|S) with E[L|eps] = 0.
// Success probability uses the lifetime-weighted recursion
//   P_S(S) = sum_a P(a) (E[chi | a] + E[L|S'_a] P_S(S'_a)) / (1 + E[L|S'_a])
// with P_S(eps) = 0, i.e. the current subgame's success averaged with the
// successor's rate over the 1 + E[L|S'] subgames left on that branch.
// Both are memoized over the whole (acyclic) state space at construction.
class PerformanceEvaluator {
 public:
  PerformanceEvaluator(const StrategyTable& table, ErrorModel true_model);
  explicit PerformanceEvaluator(const StrategyTable& table)
      : PerformanceEvaluator(table, table.config().error_model) {}
  // The evaluator keeps a reference to the table.
  PerformanceEvaluator(StrategyTable&&, ErrorModel) = delete;
  explicit PerformanceEvaluator(StrategyTable&&) = delete;

  // All accessors throw std::domain_error for states outside the table;
  // terminal states return 0.
  double expected_lifetime(GameState s) const { return lookup(lifetime_, s); }
  double success_probability(GameState s) const { return lookup(success_, s); }
  // E[chi_T] of the single subgame played at s.
  double subgame_success(GameState s) const { return lookup(subgame_success_, s); }
  // Expected packets sent per subgame over the remaining lifetime.
  double packets_per_subgame(GameState s) const;
  // Expected number of successful subgames before the game ends.
  double expected_successes(GameState s) const { return lookup(successes_, s); }
  // expected_successes / expected_lifetime: the long-run fraction of
  // successful subgames, as a pooled simulation estimates it.
  double pooled_success_rate(GameState s) const;

  const ErrorModel& true_model() const { return true_model_; }

 private:
  double lookup(const std::vector<double>& values, GameState s) const;
  std::size_t index(GameState s) const;

  const StrategyTable& table_;
  ErrorModel true_model_;
  std::vector<double> lifetime_;
  std::vector<double> success_;
  std::vector<double> subgame_success_;
  std::vector<double> packets_;
  std::vector<double> successes_;
};

double expected_lifetime(const StrategyTable& table, GameState s);
double success_probability(const StrategyTable& table, GameState s);

// Random perturbation of the true error probabilities, redrawn per run.
struct SensitivitySpec {
  double sigma = 0.0;
  int trials = 10000;
};

struct SimulationOptions {
  int runs = 10000;
  std::uint64_t seed = 1;
  std::optional<ErrorModel> true_model;     // default: the table's own model
  double sigma = 0.0;                       // Gaussian perturbation per run
  double confidence_z = 1.959963984540054;  // 95 %
};

struct RunRecord {
  int lifetime = 0;
  int successes = 0;
  // The success recursion evaluated along this run's trajectory with the
  // realized subgame outcomes; its mean is an unbiased estimate of the
  // analytic success probability.
  double weighted_success = 0.0;
};

struct SimulationResult {
  int runs = 0;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  double mean_lifetime = 0.0;
  double lifetime_ci = 0.0;  // half-width
  // Mean of RunRecord::weighted_success; estimates success_probability.
  double success_prob = 0.0;
  double success_prob_ci = 0.0;
  // Pooled per-subgame success rate sum(successes) / sum(lifetimes);
  // estimates pooled_success_rate.
  double success_rate = 0.0;
  double success_ci = 0.0;
  std::vector<RunRecord> records;
};

// Plays complete games from the initial state: actions drawn from the
// stored strategies, slot sets drawn uniformly (slot 0 always carries a
// packet and is never jammed), packet losses drawn per packet. Randomness
// is split into independent per-run substreams for actions, slots/losses
// and perturbations, so changing sigma never changes the action sequence.
// Throws std::domain_error for runs < 1 or sigma < 0.
SimulationResult simulate(const StrategyTable& table, const SimulationOptions& options);

// Runs the simulation with error probabilities perturbed per run:
// each probability gets independent N(0, sigma^2) noise, is clamped to
// [0, 1], then p_blocked is raised to p_clear if it fell below. Strategies
// stay those of the unperturbed table.
SimulationResult sensitivity_sweep(const StrategyTable& table, const SensitivitySpec& spec,
                                   std::uint64_t seed,
                                   std::optional<ErrorModel> true_model = std::nullopt);

// The clamp-then-threshold rule used by sensitivity_sweep.
ErrorModel perturb_error_model(const ErrorModel& base, double noise_clear, double noise_blocked);

struct AnalysisReport {
  GameConfig config;      // as solved
  ErrorModel true_model;  // as evaluated
  double lifetime = 0.0;
  double success_prob = 0.0;
  double subgame_success = 0.0;  // first subgame only
  double packets_per_subgame = 0.0;
  double pooled_success_rate = 0.0;
  MixedStrategy initial_strategy_t;
  MixedStrategy initial_strategy_j;
};

AnalysisReport analyze(const StrategyTable& table,
                       std::optional<ErrorModel> true_model = std::nullopt);

// Solves with `solve_model` (and optionally a dummy jammer that always jams
// `dummy_jam_slots` slots), then evaluates under `true_model`.
AnalysisReport mismatch_evaluation(const GameConfig& base, ErrorModel solve_model,
                                   ErrorModel true_model,
                                   std::optional<int> dummy_jam_slots = std::nullopt);

}  // namespace uwjam

#endif  // UWJAM_PERFORMANCE_ANALYSIS_HPP_
