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

#include "uwjam/subgame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "uwjam/special_functions.hpp"

namespace uwjam {
namespace {

void CheckActions(int n_t, int n_j, int k_info) {
  if (k_info < 1) throw std::domain_error("K must be >= 1");
  if (n_t < k_info || n_t > 2 * k_info) {
    throw std::domain_error("n_t=" + std::to_string(n_t) + " outside [K, 2K]");
  }
  if (n_j < 0 || n_j > 2 * k_info - 1) {
    throw std::domain_error("n_j=" + std::to_string(n_j) + " outside [0, 2K-1]");
  }
}

// Binomial pmf over 0..n successes with success probability q.
std::vector<double> BinomialPmf(int n, double q) {
  std::vector<double> pmf(n + 1);
  for (int i = 0; i <= n; ++i) {
    pmf[i] = std::exp(log_binomial(n, i)) * std::pow(q, i) * std::pow(1.0 - q, n - i);
  }
  return pmf;
}

}  // namespace

void SubgameParams::validate() const {
  if (k_info < 1) throw std::domain_error("K must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha must lie in [0, 1]");
  if (!(p_clear >= 0.0 && p_clear <= 1.0) || !(p_blocked >= 0.0 && p_blocked <= 1.0)) {
    throw std::domain_error("packet error probabilities must lie in [0, 1]");
  }
}

std::vector<double> blocked_count_distribution(int n_t, int n_j, int k_info) {
  CheckActions(n_t, n_j, k_info);
  const int open_slots = 2 * k_info - 1;
  const int tx_open = n_t - 1;  // T's packets in jammable slots
  const int max_blocked = std::min(tx_open, n_j);
  std::vector<double> dist(max_blocked + 1, 0.0);
  const double log_norm = log_binomial(open_slots, n_j);
  for (int b = 0; b <= max_blocked; ++b) {
    const double log_num = log_binomial(tx_open, b) + log_binomial(open_slots - tx_open, n_j - b);
    dist[b] = std::exp(log_num - log_norm);  // exp(-inf) == 0 off the support
  }
  return dist;
}

double success_given_blocked(int n_b, int n_t, const SubgameParams& params) {
  params.validate();
  if (n_t < 1 || n_b < 0 || n_b > n_t - 1) {
    throw std::domain_error("success_given_blocked: need 0 <= n_b <= n_t - 1");
  }
  const int n_c = n_t - n_b;
  const std::vector<double> clear = BinomialPmf(n_c, 1.0 - params.p_clear);
  const std::vector<double> blocked = BinomialPmf(n_b, 1.0 - params.p_blocked);
  double total = 0.0;
  for (int delivered = params.k_info; delivered <= n_t; ++delivered) {
    const int lo = std::max(0, delivered - n_c);
    const int hi = std::min(delivered, n_b);
    for (int d_b = lo; d_b <= hi; ++d_b) {
      total += clear[delivered - d_b] * blocked[d_b];
    }
  }
  return std::clamp(total, 0.0, 1.0);
}

double expected_success(ActionPair pair, const SubgameParams& params) {
  const std::vector<double> dist = blocked_count_distribution(pair.n_t, pair.n_j, params.k_info);
  double total = 0.0;
  for (int b = 0; b < static_cast<int>(dist.size()); ++b) {
    if (dist[b] > 0.0) total += dist[b] * success_given_blocked(b, pair.n_t, params);
  }
  return std::clamp(total, 0.0, 1.0);
}

Payoff subgame_payoff(ActionPair pair, const SubgameParams& params) {
  const double energy = -static_cast<double>(pair.n_t) / (2.0 * params.k_info + 1.0);
  const double u_t = params.alpha * energy + (1.0 - params.alpha) * expected_success(pair, params);
  return {u_t, -u_t};
}

SubgameTable::SubgameTable(const SubgameParams& params) : params_(params) {
  params_.validate();
  const int rows = params_.k_info + 1;
  const int cols = params_.slots();
  success_.resize(static_cast<std::size_t>(rows) * cols);
  payoff_.resize(success_.size());
  for (int n_t = params_.k_info; n_t <= 2 * params_.k_info; ++n_t) {
    for (int n_j = 0; n_j < cols; ++n_j) {
      success_[index(n_t, n_j)] = expected_success({n_t, n_j}, params_);
      payoff_[index(n_t, n_j)] = subgame_payoff({n_t, n_j}, params_).transmitter;
    }
  }
}

}  // namespace uwjam
