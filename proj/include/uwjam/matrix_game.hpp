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

#ifndef UWJAM_MATRIX_GAME_HPP_
#define UWJAM_MATRIX_GAME_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace uwjam {

// Dense row-major matrix of the row player's payoffs.
class PayoffMatrix {
 public:
  PayoffMatrix() = default;
  PayoffMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  // Reshape without preserving contents; reuses the allocation.
  void reset(int rows, int cols, double fill = 0.0) {
    rows_ = rows;
    cols_ = cols;
    data_.assign(static_cast<std::size_t>(rows) * cols, fill);
  }

  bool operator==(const PayoffMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct MatrixGameSolution {
  std::vector<double> row_strategy;  // maximizer
  std::vector<double> col_strategy;  // minimizer of the row payoff
  double value = 0.0;                // row player's game value
};

// Expected row payoff x^T M y.
double expected_payoff(const PayoffMatrix& m, std::span<const double> x, std::span<const double> y);

// Largest gain any single pure deviation achieves over x^T M y, for either
// player. Zero (up to rounding) at an equilibrium.
double best_response_gap(const PayoffMatrix& m, std::span<const double> x,
                         std::span<const double> y);

// Solves zero-sum matrix games by linear programming. The column player's
// program
//   max 1^T y  s.t.  (M + c) y <= 1,  y >= 0,   c = 1 - min(M)
// starts feasible at the slack basis, so a single simplex phase suffices;
// the row strategy is read off the optimal duals. The lowest-index improving
// column enters; the leaving row comes from a Harris ratio test. Every
// result is checked against pure deviations, and a failed double-precision
// solve is repeated in long double before giving up with
// std::runtime_error. The choice among several equilibria is deterministic.
//
// The solver keeps its tableaux between calls; one instance per thread.
class MatrixGameSolver {
 public:
  // Throws std::domain_error on empty matrices or non-finite entries.
  MatrixGameSolution solve(const PayoffMatrix& payoff);

 private:
  std::vector<double> tableau_;
  std::vector<long double> wide_tableau_;
  std::vector<int> basis_;
};

MatrixGameSolution solve_matrix_game(const PayoffMatrix& payoff);

}  // namespace uwjam

#endif  // UWJAM_MATRIX_GAME_HPP_
