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

#ifndef UWJAM_SUBGAME_HPP_
#define UWJAM_SUBGAME_HPP_

#include <vector>

namespace uwjam {

// One K-packet block sent in a frame of 2K slots. The first slot can never
// be jammed; the remaining 2K - 1 are open to both players.
struct SubgameParams {
  int k_info = 4;
  double alpha = 0.4;
  double p_clear = 0.0;
  double p_blocked = 0.0;

  int slots() const { return 2 * k_info; }
  void validate() const;
};

struct ActionPair {
  int n_t = 0;  // packets sent, K..2K
  int n_j = 0;  // slots jammed, 0..2K-1

  bool operator==(const ActionPair&) const = default;
};

// P(N_B = b | n_t, n_j) for b = 0..min(n_t - 1, n_j): hypergeometric draw of
// jammed slots among the 2K - 1 slots after the first one.
std::vector<double> blocked_count_distribution(int n_t, int n_j, int k_info);

// P(at least K of n_t packets delivered | n_b of them were jammed).
double success_given_blocked(int n_b, int n_t, const SubgameParams& params);

// E[chi_T | n_t, n_j]; the jammer's expected success is the complement.
double expected_success(ActionPair pair, const SubgameParams& params);

struct Payoff {
  double transmitter;
  double jammer;
};

// Expected single-subgame payoffs: u_T = alpha * (-n_t / (2K + 1)) +
// (1 - alpha) * E[chi_T], u_J = -u_T.
Payoff subgame_payoff(ActionPair pair, const SubgameParams& params);

// Success probabilities and transmitter payoffs for every legal action pair
// of one parameter set. Immutable once built.
class SubgameTable {
 public:
  explicit SubgameTable(const SubgameParams& params);

  const SubgameParams& params() const { return params_; }
  double success(int n_t, int n_j) const { return success_[index(n_t, n_j)]; }
  double payoff(int n_t, int n_j) const { return payoff_[index(n_t, n_j)]; }

 private:
  int index(int n_t, int n_j) const { return (n_t - params_.k_info) * params_.slots() + n_j; }

  SubgameParams params_;
  std::vector<double> success_;
  std::vector<double> payoff_;
};

}  // namespace uwjam

#endif  // UWJAM_SUBGAME_HPP_
