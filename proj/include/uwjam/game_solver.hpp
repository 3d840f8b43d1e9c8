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

#ifndef UWJAM_GAME_SOLVER_HPP_
#define UWJAM_GAME_SOLVER_HPP_

#include <optional>
#include <vector>

#include "uwjam/channel_model.hpp"
#include "uwjam/matrix_game.hpp"
#include "uwjam/subgame.hpp"

namespace uwjam {

// Battery levels in quanta (one quantum = one packet sent or slot jammed).
struct GameState {
  int b_t = 0;
  int b_j = 0;

  bool operator==(const GameState&) const = default;
};

struct GameConfig {
  int k_info = 4;
  int b_t0 = 200;
  int b_j0 = 200;
  double alpha = 0.4;
  std::optional<int> horizon = 30;  // nullopt: infinite horizon
  double discount = 1.0;
  ErrorModel error_model{};
  // When set, the jammer is not a strategic player: it always jams
  // min(slots, b_j) slots and the transmitter best-responds.
  std::optional<int> fixed_jam_slots;

  // Throws ConfigError on invalid settings, including an infinite horizon
  // with discount 1.
  void validate() const;

  // Number of horizon levels actually computed. An infinite horizon is
  // exact at b_t0 / K + 1 because every subgame burns at least K quanta.
  int effective_horizon() const;

  SubgameParams subgame_params() const {
    return {k_info, alpha, error_model.p_clear, error_model.p_blocked};
  }

  bool is_terminal(GameState s) const { return s.b_t < k_info; }

  bool operator==(const GameConfig&) const = default;
};

// Distribution over consecutive actions starting at first_action.
struct MixedStrategy {
  int first_action = 0;
  std::vector<double> probs;

  int last_action() const { return first_action + static_cast<int>(probs.size()) - 1; }
  double prob(int action) const;
  double mean() const;

  bool operator==(const MixedStrategy&) const = default;
};

struct ActionSets {
  std::vector<int> transmitter;
  std::vector<int> jammer;
};

// N_T = {K..min(2K, b_t)}, N_J = {0..min(2K-1, b_j)}, or the single dummy
// action when the jammer is fixed. Throws std::domain_error on terminal
// states.
ActionSets action_sets(GameState state, const GameConfig& config);

struct Transition {
  GameState next;
  bool terminal = false;
  double prob = 0.0;
};

// Pure actions move deterministically; the successor collapses to the
// terminal state once b_t - n_t < K.
Transition transition(GameState state, ActionPair pair, const GameConfig& config);

// Product distribution of the two mixed strategies over successor states.
std::vector<Transition> transition_distribution(GameState state, const MixedStrategy& strategy_t,
                                                const MixedStrategy& strategy_j,
                                                const GameConfig& config);

struct StateEntry {
  MixedStrategy strategy_t;
  MixedStrategy strategy_j;
  double value_t = 0.0;

  double value_j() const { return -value_t; }
  bool operator==(const StateEntry&) const = default;
};

// Deployable lookup table: one equilibrium per non-terminal state, plus the
// value of every horizon level gamma = 1..effective_horizon() when the
// table came straight from the solver.
class StrategyTable {
 public:
  StrategyTable() = default;
  explicit StrategyTable(GameConfig config);

  const GameConfig& config() const { return config_; }

  bool contains(GameState s) const;
  // Throws std::domain_error for terminal or out-of-range states.
  const StateEntry& at(GameState s) const;
  StateEntry& at(GameState s);
  // nullptr for terminal states.
  const StateEntry* find(GameState s) const;

  // Number of non-terminal states: (b_t0 - K + 1) * (b_j0 + 1).
  std::size_t state_count() const { return entries_.size(); }

  // Value of the gamma-horizon game at s. gamma = 0 and terminal states
  // give 0. Requires has_horizon_values() for 0 < gamma < horizon.
  double horizon_value(GameState s, int gamma) const;
  void set_horizon_value(GameState s, int gamma, double value);
  bool has_horizon_values() const { return !horizon_values_.empty(); }
  void drop_horizon_values() { horizon_values_.clear(); }

  // Visits non-terminal states in increasing (b_t, b_j).
  template <typename Fn>
  void for_each_state(Fn&& fn) const {
    for (int b_t = config_.k_info; b_t <= config_.b_t0; ++b_t) {
      for (int b_j = 0; b_j <= config_.b_j0; ++b_j) fn(GameState{b_t, b_j}, at({b_t, b_j}));
    }
  }

  bool operator==(const StrategyTable&) const = default;

 private:
  std::size_t entry_index(GameState s) const;
  std::size_t horizon_index(GameState s, int gamma) const;

  GameConfig config_;
  std::vector<StateEntry> entries_;
  std::vector<double> horizon_values_;
};

// Matrix of E[U_T(gamma)] over the legal action pairs at `state`:
// subgame payoff plus discount times the (gamma - 1)-horizon value of the
// successor. Successor values are read from `table`, which must already
// hold horizon values for every state with smaller b_t.
PayoffMatrix build_payoff_matrix(GameState state, int gamma, const StrategyTable& table,
                                 const SubgameTable& subgame);

// Backward induction over battery states, lowest b_t first. Every state
// stores the equilibrium of its full-horizon matrix (receding horizon).
StrategyTable solve_full_game(const GameConfig& config);

}  // namespace uwjam

#endif  // UWJAM_GAME_SOLVER_HPP_
