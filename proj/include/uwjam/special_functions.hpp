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

#ifndef UWJAM_SPECIAL_FUNCTIONS_HPP_
#define UWJAM_SPECIAL_FUNCTIONS_HPP_

namespace uwjam {

// Modified Bessel function of the first kind, order 0. Overflows to +inf
// for x above ~713; use bessel_i0e there.
double bessel_i0(double x);

// Exponentially scaled I_0: exp(-|x|) * I_0(x). Finite for every x.
double bessel_i0e(double x);

// First-order Marcum Q function Q_1(a, b) for a, b >= 0.
//
// Evaluated as a Poisson mixture of Poisson tails,
//   Q_1(a, b) = sum_k Pois(k; a^2/2) * P[Pois(b^2/2) <= k],
// entirely in the log domain, so results far below 1e-300 underflow cleanly
// to zero instead of producing inf * 0.
//
// Throws std::domain_error for negative or NaN arguments.
double marcum_q1(double a, double b);

// Natural log of n! for n >= 0, tabulated once for small n.
double log_factorial(int n);

// log C(n, k); -inf when k is outside [0, n].
double log_binomial(int n, int k);

}  // namespace uwjam

#endif  // UWJAM_SPECIAL_FUNCTIONS_HPP_
