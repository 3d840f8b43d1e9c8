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

#include "uwjam/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uwjam {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Below this the power series is used; above it the asymptotic expansion
// reaches full double precision (smallest term ~ exp(-2x)).
constexpr double kI0SeriesLimit = 30.0;

double I0Series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// sqrt(2 pi x) e^{-x} I_0(x) ~ sum_k ((2k-1)!!)^2 / (k! (8x)^k)
double I0eAsymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next > term) break;  // series started diverging
    term = next;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double LogAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

constexpr int kLogFactorialTableSize = 1024;

const std::array<double, kLogFactorialTableSize>& LogFactorialTable() {
  static const std::array<double, kLogFactorialTableSize> table = [] {
    std::array<double, kLogFactorialTableSize> t{};
    t[0] = 0.0;
    for (int n = 1; n < kLogFactorialTableSize; ++n) {
      t[n] = std::lgamma(static_cast<double>(n) + 1.0);
    }
    return t;
  }();
  return table;
}

}  // namespace

double bessel_i0(double x) {
  const double ax = std::fabs(x);
  if (ax <= kI0SeriesLimit) return I0Series(ax);
  return std::exp(ax) * I0eAsymptotic(ax);
}

double bessel_i0e(double x) {
  const double ax = std::fabs(x);
  if (ax <= kI0SeriesLimit) return std::exp(-ax) * I0Series(ax);
  return I0eAsymptotic(ax);
}

double marcum_q1(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw std::domain_error("marcum_q1: arguments must be non-negative");
  }
  const double x = 0.5 * a * a;
  const double y = 0.5 * b * b;
  if (y == 0.0) return 1.0;
  if (x == 0.0) return std::exp(-y);

  const double log_x = std::log(x);
  const double log_y = std::log(y);
  // k = 0 terms of both Poisson sequences.
  double log_pois_x = -x;
  double log_pois_y = -y;
  double log_tail_y = log_pois_y;  // log P[Pois(y) <= k]
  double log_sum = log_pois_x + log_tail_y;
  double prev_term = log_sum;

  // Terms rise up to k ~ max(x, sqrt(x y)) and then decay monotonically.
  const double peak = std::max(x, std::sqrt(x * y));
  for (int k = 1; k < 100'000'000; ++k) {
    const double dk = static_cast<double>(k);
    log_pois_x += log_x - std::log(dk);
    log_pois_y += log_y - std::log(dk);
    log_tail_y = LogAddExp(log_tail_y, log_pois_y);
    if (log_tail_y > 0.0) log_tail_y = 0.0;
    const double log_term = log_pois_x + log_tail_y;
    log_sum = LogAddExp(log_sum, log_term);
    const bool decaying = dk > peak && log_term < prev_term;
    if (decaying && log_term - log_sum < std::log(1e-17)) break;
    prev_term = log_term;
  }
  const double q = std::exp(log_sum);
  return q > 1.0 ? 1.0 : q;
}

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  if (n < kLogFactorialTableSize) return LogFactorialTable()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return kNegInf;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace uwjam
