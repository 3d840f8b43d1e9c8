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

#include "uwjam/game_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "uwjam/errors.hpp"

namespace uwjam {
namespace {

std::string StateName(GameState s) {
  return "(" + std::to_string(s.b_t) + ", " + std::to_string(s.b_j) + ")";
}

int MaxTransmit(GameState s, const GameConfig& c) { return std::min(2 * c.k_info, s.b_t); }

// Jammer actions are the contiguous range [lo, hi].
std::pair<int, int> JamRange(GameState s, const GameConfig& c) {
  if (c.fixed_jam_slots) {
    const int n = std::min(*c.fixed_jam_slots, s.b_j);
    return {n, n};
  }
  return {0, std::min(2 * c.k_info - 1, s.b_j)};
}

void FillPayoffMatrix(GameState s, int gamma, const StrategyTable& table,
                      const SubgameTable& subgame, PayoffMatrix& out) {
  const GameConfig& c = table.config();
  const int k = c.k_info;
  const int max_t = MaxTransmit(s, c);
  const auto [lo_j, hi_j] = JamRange(s, c);
  out.reset(max_t - k + 1, hi_j - lo_j + 1);
  for (int n_t = k; n_t <= max_t; ++n_t) {
    for (int n_j = lo_j; n_j <= hi_j; ++n_j) {
      double entry = subgame.payoff(n_t, n_j);
      if (gamma > 1 && c.discount != 0.0) {
        entry += c.discount * table.horizon_value({s.b_t - n_t, s.b_j - n_j}, gamma - 1);
      }
      out(n_t - k, n_j - lo_j) = entry;
    }
  }
}

}  // namespace

void GameConfig::validate() const {
  if (k_info < 1) throw ConfigError("K must be >= 1");
  if (b_t0 < 0 || b_j0 < 0) throw ConfigError("initial batteries must be non-negative");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (!(discount >= 0.0 && discount <= 1.0)) throw ConfigError("discount must lie in [0, 1]");
  if (horizon && *horizon < 1) throw ConfigError("horizon must be >= 1");
  if (!horizon && discount >= 1.0) {
    throw ConfigError("an infinite horizon requires discount < 1");
  }
  if (!(error_model.p_clear >= 0.0 && error_model.p_clear <= 1.0) ||
      !(error_model.p_blocked >= 0.0 && error_model.p_blocked <= 1.0)) {
    throw ConfigError("packet error probabilities must lie in [0, 1]");
  }
  if (fixed_jam_slots && (*fixed_jam_slots < 0 || *fixed_jam_slots > 2 * k_info - 1)) {
    throw ConfigError("fixed jammer slots must lie in [0, 2K-1]");
  }
}

int GameConfig::effective_horizon() const { return horizon ? *horizon : b_t0 / k_info + 1; }

double MixedStrategy::prob(int action) const {
  if (action < first_action || action > last_action()) return 0.0;
  return probs[action - first_action];
}

double MixedStrategy::mean() const {
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    total += probs[i] * (first_action + static_cast<int>(i));
  return total;
}

ActionSets action_sets(GameState state, const GameConfig& config) {
  if (config.is_terminal(state)) {
    throw std::domain_error("no actions in terminal state " + StateName(state));
  }
  if (state.b_t > config.b_t0 || state.b_j > config.b_j0 || state.b_j < 0) {
    throw std::domain_error("state " + StateName(state) + " outside the battery range");
  }
  ActionSets sets;
  for (int n = config.k_info; n <= MaxTransmit(state, config); ++n) sets.transmitter.push_back(n);
  const auto [lo, hi] = JamRange(state, config);
  for (int n = lo; n <= hi; ++n) sets.jammer.push_back(n);
  return sets;
}

Transition transition(GameState state, ActionPair pair, const GameConfig& config) {
  const ActionSets sets = action_sets(state, config);
  const bool legal_t = std::find(sets.transmitter.begin(), sets.transmitter.end(), pair.n_t) !=
                       sets.transmitter.end();
  const bool legal_j =
      std::find(sets.jammer.begin(), sets.jammer.end(), pair.n_j) != sets.jammer.end();
  if (!legal_t || !legal_j) {
    throw std::domain_error("actions (" + std::to_string(pair.n_t) + ", " +
                            std::to_string(pair.n_j) + ") illegal in state " + StateName(state));
  }
  Transition t;
  t.next = {state.b_t - pair.n_t, state.b_j - pair.n_j};
  t.terminal = config.is_terminal(t.next);
  t.prob = 1.0;
  return t;
}

std::vector<Transition> transition_distribution(GameState state, const MixedStrategy& strategy_t,
                                                const MixedStrategy& strategy_j,
                                                const GameConfig& config) {
  std::vector<Transition> out;
  for (int n_t = strategy_t.first_action; n_t <= strategy_t.last_action(); ++n_t) {
    const double p_t = strategy_t.prob(n_t);
    if (p_t == 0.0) continue;
    for (int n_j = strategy_j.first_action; n_j <= strategy_j.last_action(); ++n_j) {
      const double p_j = strategy_j.prob(n_j);
      if (p_j == 0.0) continue;
      Transition t = transition(state, {n_t, n_j}, config);
      t.prob = p_t * p_j;
      out.push_back(t);
    }
  }
  return out;
}

StrategyTable::StrategyTable(GameConfig config) : config_(std::move(config)) {
  config_.validate();
  const int levels = std::max(0, config_.b_t0 - config_.k_info + 1);
  entries_.resize(static_cast<std::size_t>(levels) * (config_.b_j0 + 1));
  horizon_values_.assign(static_cast<std::size_t>(config_.b_t0 + 1) * (config_.b_j0 + 1) *
                             (config_.effective_horizon() + 1),
                         0.0);
}

bool StrategyTable::contains(GameState s) const {
  return s.b_t >= config_.k_info && s.b_t <= config_.b_t0 && s.b_j >= 0 && s.b_j <= config_.b_j0;
}

std::size_t StrategyTable::entry_index(GameState s) const {
  if (!contains(s)) throw std::domain_error("state " + StateName(s) + " not in strategy table");
  return static_cast<std::size_t>(s.b_t - config_.k_info) * (config_.b_j0 + 1) + s.b_j;
}

const StateEntry& StrategyTable::at(GameState s) const { return entries_[entry_index(s)]; }
StateEntry& StrategyTable::at(GameState s) { return entries_[entry_index(s)]; }

const StateEntry* StrategyTable::find(GameState s) const {
  return contains(s) ? &entries_[entry_index(s)] : nullptr;
}

std::size_t StrategyTable::horizon_index(GameState s, int gamma) const {
  return (static_cast<std::size_t>(s.b_t) * (config_.b_j0 + 1) + s.b_j) *
             (config_.effective_horizon() + 1) +
         gamma;
}

double StrategyTable::horizon_value(GameState s, int gamma) const {
  if (gamma <= 0 || config_.is_terminal(s)) return 0.0;
  if (!contains(s)) throw std::domain_error("state " + StateName(s) + " not in strategy table");
  const int top = config_.effective_horizon();
  if (gamma > top) throw std::domain_error("horizon level beyond the solved horizon");
  if (gamma == top) return at(s).value_t;
  if (!has_horizon_values()) {
    throw std::logic_error("strategy table was loaded without intermediate horizon values");
  }
  return horizon_values_[horizon_index(s, gamma)];
}

void StrategyTable::set_horizon_value(GameState s, int gamma, double value) {
  if (!contains(s) || gamma < 1 || gamma > config_.effective_horizon()) {
    throw std::domain_error("horizon value index out of range");
  }
  if (!has_horizon_values()) throw std::logic_error("strategy table has no horizon storage");
  horizon_values_[horizon_index(s, gamma)] = value;
}

PayoffMatrix build_payoff_matrix(GameState state, int gamma, const StrategyTable& table,
                                 const SubgameTable& subgame) {
  action_sets(state, table.config());  // validates the state
  if (gamma < 1 || gamma > table.config().effective_horizon()) {
    throw std::domain_error("horizon level out of range");
  }
  PayoffMatrix m;
  FillPayoffMatrix(state, gamma, table, subgame, m);
  return m;
}

StrategyTable solve_full_game(const GameConfig& config) {
  StrategyTable table(config);
  const SubgameTable subgame(config.subgame_params());
  const int top = config.effective_horizon();
  MatrixGameSolver lp;
  PayoffMatrix matrix;
  MatrixGameSolution solution;

  for (int b_t = config.k_info; b_t <= config.b_t0; ++b_t) {
    // At most b_t / K subgames remain, so every horizon beyond that sees
    // the same matrix as the last solved one.
    const int solved_levels = std::min(top, b_t / config.k_info);
    for (int b_j = 0; b_j <= config.b_j0; ++b_j) {
      const GameState s{b_t, b_j};
      for (int gamma = 1; gamma <= solved_levels; ++gamma) {
        FillPayoffMatrix(s, gamma, table, subgame, matrix);
        solution = lp.solve(matrix);
        table.set_horizon_value(s, gamma, solution.value);
      }
      for (int gamma = solved_levels + 1; gamma <= top; ++gamma) {
        table.set_horizon_value(s, gamma, solution.value);
      }
      StateEntry& entry = table.at(s);
      entry.strategy_t = {config.k_info, std::move(solution.row_strategy)};
      entry.strategy_j = {JamRange(s, config).first, std::move(solution.col_strategy)};
      entry.value_t = solution.value;
    }
  }
  return table;
}

}  // namespace uwjam
