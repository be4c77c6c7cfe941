// Copyright 2026 The fourier2relu Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace f2r::quad {

// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point rule computed by Newton iteration on P_n; nodes ascending.
Rule gauss_legendre(int n);

// The order-10 rule used throughout the library (computed once).
const Rule& gl10();

// Fixed-rule integral of f over [a, b].
template <class F>
double integrate(const F& f, double a, double b, const Rule& rule = gl10()) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

// Fixed-rule integral over consecutive pieces [cuts[i], cuts[i+1]].
template <class F>
double integrate_pieces(const F& f, std::span<const double> cuts,
                        const Rule& rule = gl10()) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) sum += integrate(f, cuts[i], cuts[i + 1], rule);
  }
  return sum;
}

// Adaptive bisection comparing the 10- and 20-point rules on each panel.
// Stops when |I20 - I10| <= max(abs_tol, rel_tol * |I20|) on every panel.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-13,
                          double abs_tol = 0.0, int max_depth = 50);

// Pairwise (cascade) summation; result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace f2r::quad
