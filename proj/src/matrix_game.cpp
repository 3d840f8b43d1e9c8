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

#include "uwjam/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace uwjam {
namespace {

constexpr int kMaxPivots = 10000;
// Equilibria that fail this deviation check are reported, not returned.
constexpr double kMaxGap = 1e-8;

void Normalize(std::vector<double>& p) {
  for (double& v : p) {
    if (v < 0.0) v = 0.0;
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
}

// Single-phase simplex on max 1'y s.t. (M + shift) y <= 1, y >= 0. The row
// strategy is read off the slack reduced costs. Returns false if the
// pivoting broke down numerically.
template <typename Real>
bool Simplex(const PayoffMatrix& payoff, double shift, std::vector<Real>& tableau,
             std::vector<int>& basis, MatrixGameSolution& solution) {
  const int m = payoff.rows();
  const int n = payoff.cols();
  const Real pivot_tol = 1e-9;
  const Real cost_tol = 1e-12;
  const Real rhs_tol = 1e-12;
  // Columns: y_0..y_{n-1}, slack_0..slack_{m-1}, rhs. Row m is the
  // objective row holding reduced costs (negative = improving).
  const int width = n + m + 1;
  const int rhs = n + m;
  tableau.assign(static_cast<std::size_t>(m + 1) * width, Real(0));
  basis.resize(m);
  auto at = [&](int r, int c) -> Real& { return tableau[static_cast<std::size_t>(r) * width + c]; };
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c)
      at(r, c) = static_cast<Real>(payoff(r, c)) + static_cast<Real>(shift);
    at(r, n + r) = 1;
    at(r, rhs) = 1;
    basis[r] = n + r;
  }
  for (int c = 0; c < n; ++c) at(m, c) = -1;

  for (int iter = 0;; ++iter) {
    if (iter > kMaxPivots) return false;
    // Bland: lowest-index improving column enters.
    int enter = -1;
    for (int c = 0; c < n + m; ++c) {
      if (at(m, c) < -cost_tol) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;
    // Harris ratio test: bound the step with a slightly relaxed rhs, then
    // take the largest pivot inside that bound.
    Real bound = std::numeric_limits<Real>::infinity();
    for (int r = 0; r < m; ++r) {
      const Real a = at(r, enter);
      if (a > pivot_tol) bound = std::min(bound, (at(r, rhs) + rhs_tol) / a);
    }
    int leave = -1;
    for (int r = 0; r < m; ++r) {
      const Real a = at(r, enter);
      if (a <= pivot_tol || at(r, rhs) / a > bound) continue;
      if (leave < 0 || a > at(leave, enter) || (a == at(leave, enter) && basis[r] < basis[leave])) {
        leave = r;
      }
    }
    // The LP is bounded, so no eligible row means round-off took over.
    if (leave < 0) return false;

    const Real pivot = at(leave, enter);
    for (int c = 0; c < width; ++c) at(leave, c) /= pivot;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const Real factor = at(r, enter);
      if (factor == 0) continue;
      for (int c = 0; c < width; ++c) at(r, c) -= factor * at(leave, c);
    }
    basis[leave] = enter;
    for (int r = 0; r < m; ++r) {
      if (at(r, rhs) < 0) at(r, rhs) = 0;
    }
  }

  const Real objective = at(m, rhs);  // sum of y at the optimum
  if (!(objective > 0)) return false;
  solution.col_strategy.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) solution.col_strategy[basis[r]] = static_cast<double>(at(r, rhs));
  }
  solution.row_strategy.resize(m);
  for (int r = 0; r < m; ++r) solution.row_strategy[r] = static_cast<double>(at(m, n + r));
  Normalize(solution.col_strategy);
  Normalize(solution.row_strategy);
  solution.value = static_cast<double>(Real(1) / objective - static_cast<Real>(shift));
  return true;
}

}  // namespace

double expected_payoff(const PayoffMatrix& m, std::span<const double> x,
                       std::span<const double> y) {
  double total = 0.0;
  for (int r = 0; r < m.rows(); ++r) {
    if (x[r] == 0.0) continue;
    double row = 0.0;
    for (int c = 0; c < m.cols(); ++c) row += m(r, c) * y[c];
    total += x[r] * row;
  }
  return total;
}

double best_response_gap(const PayoffMatrix& m, std::span<const double> x,
                         std::span<const double> y) {
  const double v = expected_payoff(m, x, y);
  double gap = 0.0;
  for (int r = 0; r < m.rows(); ++r) {
    double row = 0.0;
    for (int c = 0; c < m.cols(); ++c) row += m(r, c) * y[c];
    gap = std::max(gap, row - v);
  }
  for (int c = 0; c < m.cols(); ++c) {
    double col = 0.0;
    for (int r = 0; r < m.rows(); ++r) col += x[r] * m(r, c);
    gap = std::max(gap, v - col);
  }
  return gap;
}

MatrixGameSolution MatrixGameSolver::solve(const PayoffMatrix& payoff) {
  const int m = payoff.rows();
  const int n = payoff.cols();
  if (m < 1 || n < 1) throw std::domain_error("matrix game must have at least one row and column");
  double lowest = std::numeric_limits<double>::infinity();
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!std::isfinite(payoff(r, c)))
        throw std::domain_error("matrix game has non-finite entries");
      lowest = std::min(lowest, payoff(r, c));
    }
  }
  const double shift = 1.0 - lowest;
  const double max_gap = kMaxGap * std::max(1.0, shift);

  MatrixGameSolution solution;
  if (Simplex(payoff, shift, tableau_, basis_, solution) &&
      best_response_gap(payoff, solution.row_strategy, solution.col_strategy) <= max_gap) {
    return solution;
  }
  // Nearly tied entries can defeat double precision; retry wider.
  if (Simplex(payoff, shift, wide_tableau_, basis_, solution)) {
    const double gap = best_response_gap(payoff, solution.row_strategy, solution.col_strategy);
    if (gap <= max_gap) return solution;
    throw std::runtime_error("matrix game solve lost precision (deviation gain " +
                             std::to_string(gap) + ")");
  }
  throw std::runtime_error("matrix game simplex failed");
}

MatrixGameSolution solve_matrix_game(const PayoffMatrix& payoff) {
  MatrixGameSolver solver;
  return solver.solve(payoff);
}

}  // namespace uwjam
