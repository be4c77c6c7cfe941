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

#include "f2r/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "f2r/errors.hpp"

namespace f2r::quad {

Rule gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be >= 1");
  Rule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const Rule& gl10() {
  static const Rule rule = gauss_legendre(10);
  return rule;
}

namespace {

const Rule& gl20() {
  static const Rule rule = gauss_legendre(20);
  return rule;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double rel_tol, double abs_tol, int depth) {
  const double coarse = integrate(f, a, b, gl10());
  const double fine = integrate(f, a, b, gl20());
  const double err = std::abs(fine - coarse);
  if (depth <= 0 || err <= std::max(abs_tol, rel_tol * std::abs(fine)))
    return fine;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, rel_tol, 0.5 * abs_tol, depth - 1) +
         adapt(f, mid, b, rel_tol, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          int max_depth) {
  return adapt(f, a, b, rel_tol, abs_tol, max_depth);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace f2r::quad
