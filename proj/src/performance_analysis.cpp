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

#include "uwjam/performance_analysis.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "uwjam/subgame.hpp"

namespace uwjam {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class Stream : std::uint64_t { kActions = 1, kChannel = 2, kPerturbation = 3 };

// Independent generator for one (seed, run, purpose) triple.
std::mt19937_64 Substream(std::uint64_t seed, std::uint64_t run, Stream stream) {
  const std::uint64_t key =
      SplitMix64(SplitMix64(seed) ^ SplitMix64(run * 4 + static_cast<std::uint64_t>(stream)));
  return std::mt19937_64(key);
}

int SampleAction(const MixedStrategy& s, std::mt19937_64& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  int last_positive = s.first_action;
  for (std::size_t i = 0; i < s.probs.size(); ++i) {
    if (s.probs[i] <= 0.0) continue;
    last_positive = s.first_action + static_cast<int>(i);
    cumulative += s.probs[i];
    if (u < cumulative) return last_positive;
  }
  return last_positive;  // rounding in the cumulative sum
}

// Uniform `count`-subset of `n` slots as a bit mask.
std::uint64_t SampleSlots(int n, int count, std::mt19937_64& rng) {
  std::array<int, 64> slots{};
  for (int i = 0; i < n; ++i) slots[i] = i;
  std::uint64_t mask = 0;
  for (int i = 0; i < count; ++i) {
    const int j = std::uniform_int_distribution<int>(i, n - 1)(rng);
    std::swap(slots[i], slots[j]);
    mask |= std::uint64_t{1} << slots[i];
  }
  return mask;
}

// One subgame; returns true when at least K packets get through.
bool PlaySubgame(int k, int n_t, int n_j, const ErrorModel& em, std::mt19937_64& rng) {
  const int open = 2 * k - 1;  // slots after the first, unjammable one
  const std::uint64_t tx = SampleSlots(open, n_t - 1, rng);
  const std::uint64_t jam = SampleSlots(open, n_j, rng);
  const int blocked = std::popcount(tx & jam);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int delivered = 0;
  for (int i = 0; i < n_t; ++i) {
    const double p_err = i < blocked ? em.p_blocked : em.p_clear;
    if (!(unit(rng) < p_err)) ++delivered;
  }
  return delivered >= k;
}

}  // namespace

PerformanceEvaluator::PerformanceEvaluator(const StrategyTable& table, ErrorModel true_model)
    : table_(table), true_model_(true_model) {
  const GameConfig& c = table_.config();
  SubgameParams params = c.subgame_params();
  params.p_clear = true_model_.p_clear;
  params.p_blocked = true_model_.p_blocked;
  const SubgameTable subgame(params);

  const std::size_t n = static_cast<std::size_t>(c.b_t0 + 1) * (c.b_j0 + 1);
  lifetime_.assign(n, 0.0);
  success_.assign(n, 0.0);
  subgame_success_.assign(n, 0.0);
  packets_.assign(n, 0.0);
  successes_.assign(n, 0.0);

  table_.for_each_state([&](GameState s, const StateEntry& e) {
    double lifetime = 0.0;
    double success = 0.0;
    double first = 0.0;
    double packets = 0.0;
    double successes = 0.0;
    for (int n_t = e.strategy_t.first_action; n_t <= e.strategy_t.last_action(); ++n_t) {
      const double p_t = e.strategy_t.prob(n_t);
      if (p_t == 0.0) continue;
      for (int n_j = e.strategy_j.first_action; n_j <= e.strategy_j.last_action(); ++n_j) {
        const double p = p_t * e.strategy_j.prob(n_j);
        if (p == 0.0) continue;
        const GameState next{s.b_t - n_t, s.b_j - n_j};
        const std::size_t ni = index(next);
        const double next_lifetime = lifetime_[ni];  // zero for terminal successors
        const double chi = subgame.success(n_t, n_j);
        lifetime += p * (1.0 + next_lifetime);
        success += p * (chi + next_lifetime * success_[ni]) / (1.0 + next_lifetime);
        first += p * chi;
        packets += p * (n_t + packets_[ni]);
        successes += p * (chi + successes_[ni]);
      }
    }
    const std::size_t i = index(s);
    lifetime_[i] = lifetime;
    success_[i] = success;
    subgame_success_[i] = first;
    packets_[i] = packets;
    successes_[i] = successes;
  });
}

std::size_t PerformanceEvaluator::index(GameState s) const {
  return static_cast<std::size_t>(s.b_t) * (table_.config().b_j0 + 1) + s.b_j;
}

double PerformanceEvaluator::lookup(const std::vector<double>& values, GameState s) const {
  const GameConfig& c = table_.config();
  if (s.b_t < 0 || s.b_j < 0 || s.b_t > c.b_t0 || s.b_j > c.b_j0) {
    throw std::domain_error("state (" + std::to_string(s.b_t) + ", " + std::to_string(s.b_j) +
                            ") not covered by the strategy table");
  }
  return values[index(s)];
}

double PerformanceEvaluator::packets_per_subgame(GameState s) const {
  const double lifetime = expected_lifetime(s);
  return lifetime > 0.0 ? lookup(packets_, s) / lifetime : 0.0;
}

double PerformanceEvaluator::pooled_success_rate(GameState s) const {
  const double lifetime = expected_lifetime(s);
  return lifetime > 0.0 ? expected_successes(s) / lifetime : 0.0;
}

double expected_lifetime(const StrategyTable& table, GameState s) {
  return PerformanceEvaluator(table).expected_lifetime(s);
}

double success_probability(const StrategyTable& table, GameState s) {
  return PerformanceEvaluator(table).success_probability(s);
}

ErrorModel perturb_error_model(const ErrorModel& base, double noise_clear, double noise_blocked) {
  ErrorModel out;
  out.p_clear = std::clamp(base.p_clear + noise_clear, 0.0, 1.0);
  out.p_blocked = std::clamp(base.p_blocked + noise_blocked, 0.0, 1.0);
  out.p_blocked = std::max(out.p_blocked, out.p_clear);
  return out;
}

SimulationResult simulate(const StrategyTable& table, const SimulationOptions& options) {
  if (options.runs < 1) throw std::domain_error("simulation needs at least one run");
  if (!(options.sigma >= 0.0)) throw std::domain_error("sigma must be non-negative");
  const GameConfig& c = table.config();
  const ErrorModel base = options.true_model.value_or(c.error_model);

  // Lifetimes depend only on the strategies, never on the channel.
  const PerformanceEvaluator lifetimes(table, base);
  std::vector<std::pair<bool, double>> path;  // (success, E[L] of successor)

  SimulationResult result;
  result.runs = options.runs;
  result.seed = options.seed;
  result.sigma = options.sigma;
  result.records.reserve(options.runs);

  for (int run = 0; run < options.runs; ++run) {
    std::mt19937_64 actions = Substream(options.seed, run, Stream::kActions);
    std::mt19937_64 channel = Substream(options.seed, run, Stream::kChannel);
    ErrorModel em = base;
    if (options.sigma > 0.0) {
      std::mt19937_64 perturb = Substream(options.seed, run, Stream::kPerturbation);
      std::normal_distribution<double> noise(0.0, options.sigma);
      const double noise_clear = noise(perturb);
      const double noise_blocked = noise(perturb);
      em = perturb_error_model(base, noise_clear, noise_blocked);
    }

    RunRecord record;
    path.clear();
    GameState s{c.b_t0, c.b_j0};
    while (!c.is_terminal(s)) {
      const StateEntry& e = table.at(s);
      const int n_t = SampleAction(e.strategy_t, actions);
      const int n_j = SampleAction(e.strategy_j, actions);
      const bool ok = PlaySubgame(c.k_info, n_t, n_j, em, channel);
      if (ok) ++record.successes;
      ++record.lifetime;
      s = {s.b_t - n_t, s.b_j - n_j};
      path.emplace_back(ok, lifetimes.expected_lifetime(s));
    }
    double weighted = 0.0;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      weighted = ((it->first ? 1.0 : 0.0) + it->second * weighted) / (1.0 + it->second);
    }
    record.weighted_success = weighted;
    result.records.push_back(record);
  }

  const double n = options.runs;
  double sum_l = 0.0;
  double sum_s = 0.0;
  double sum_w = 0.0;
  for (const RunRecord& r : result.records) {
    sum_l += r.lifetime;
    sum_s += r.successes;
    sum_w += r.weighted_success;
  }
  result.mean_lifetime = sum_l / n;
  result.success_prob = sum_w / n;
  result.success_rate = sum_l > 0.0 ? sum_s / sum_l : 0.0;
  if (options.runs > 1) {
    double var_l = 0.0;
    double var_ratio = 0.0;
    double var_w = 0.0;
    for (const RunRecord& r : result.records) {
      const double dl = r.lifetime - result.mean_lifetime;
      const double dw = r.weighted_success - result.success_prob;
      var_w += dw * dw;
      const double residual = r.successes - result.success_rate * r.lifetime;
      var_l += dl * dl;
      var_ratio += residual * residual;
    }
    var_l /= n - 1.0;
    var_w /= n - 1.0;
    // Delta method for the ratio of means.
    var_ratio /= (n - 1.0) * result.mean_lifetime * result.mean_lifetime;
    result.lifetime_ci = options.confidence_z * std::sqrt(var_l / n);
    result.success_prob_ci = options.confidence_z * std::sqrt(var_w / n);
    result.success_ci = options.confidence_z * std::sqrt(var_ratio / n);
  }
  return result;
}

SimulationResult sensitivity_sweep(const StrategyTable& table, const SensitivitySpec& spec,
                                   std::uint64_t seed, std::optional<ErrorModel> true_model) {
  if (!(spec.sigma >= 0.0)) throw std::domain_error("sigma must be non-negative");
  SimulationOptions options;
  options.runs = spec.trials;
  options.seed = seed;
  options.sigma = spec.sigma;
  options.true_model = true_model;
  return simulate(table, options);
}

AnalysisReport analyze(const StrategyTable& table, std::optional<ErrorModel> true_model) {
  const GameConfig& c = table.config();
  const PerformanceEvaluator eval(table, true_model.value_or(c.error_model));
  const GameState init{c.b_t0, c.b_j0};
  AnalysisReport report;
  report.config = c;
  report.true_model = eval.true_model();
  report.lifetime = eval.expected_lifetime(init);
  report.success_prob = eval.success_probability(init);
  report.subgame_success = eval.subgame_success(init);
  report.packets_per_subgame = eval.packets_per_subgame(init);
  report.pooled_success_rate = eval.pooled_success_rate(init);
  if (const StateEntry* e = table.find(init)) {
    report.initial_strategy_t = e->strategy_t;
    report.initial_strategy_j = e->strategy_j;
  }
  return report;
}

AnalysisReport mismatch_evaluation(const GameConfig& base, ErrorModel solve_model,
                                   ErrorModel true_model, std::optional<int> dummy_jam_slots) {
  GameConfig config = base;
  config.error_model = solve_model;
  config.fixed_jam_slots = dummy_jam_slots;
  const StrategyTable table = solve_full_game(config);
  return analyze(table, true_model);
}

}  // namespace uwjam
