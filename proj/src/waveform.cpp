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

#include "f2r/waveform.hpp"

#include <cmath>
#include <string>

#include "f2r/errors.hpp"

namespace f2r {

void TriangleParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw PreconditionError("triangle: alpha must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw PreconditionError("triangle: beta must be positive");
  if (k < 1) throw PreconditionError("triangle: k must be >= 1");
}

double triangle_eval(double t, double alpha, double beta) {
  if (t >= 0.0 && t <= alpha) return beta * t;
  if (t > alpha && t <= 2.0 * alpha) return 2.0 * alpha * beta - beta * t;
  return 0.0;
}

double waveform_eval(double t, const TriangleParams& p) {
  double sum = 0.0;
  for (long long i = -p.k + 1; i <= p.k; ++i)
    sum += triangle_eval(t - 2.0 * p.alpha * static_cast<double>(i - 1), p.alpha, p.beta);
  return sum;
}

ReluSum waveform_relus(const TriangleParams& p) {
  p.validate();
  ReluSum g;
  const long long last = 4 * p.k;
  g.offsets.reserve(static_cast<std::size_t>(last + 1));
  g.coeffs.reserve(static_cast<std::size_t>(last + 1));
  const double start = -p.support();
  for (long long j = 0; j <= last; ++j) {
    double c;
    if (j == 0 || j == last)
      c = p.beta;
    else
      c = (j % 2 == 1) ? -2.0 * p.beta : 2.0 * p.beta;
    g.add(start + static_cast<double>(j) * p.alpha, c);
  }
  return g;
}

ScalarLayer waveform_layer(const TriangleParams& p) {
  const double one = 1.0;
  return lift(waveform_relus(p), std::span<const double>(&one, 1));
}

PiecewiseLinear waveform_pwl(const TriangleParams& p) {
  p.validate();
  const long long last = 4 * p.k;
  std::vector<double> xs, ys;
  xs.reserve(static_cast<std::size_t>(last + 1));
  ys.reserve(static_cast<std::size_t>(last + 1));
  for (long long j = 0; j <= last; ++j) {
    xs.push_back(-p.support() + static_cast<double>(j) * p.alpha);
    ys.push_back(j % 2 == 1 ? p.height() : 0.0);
  }
  return PiecewiseLinear(std::move(xs), std::move(ys), 0.0, 0.0);
}

double composition_deviation(const TriangleParams& inner, const TriangleParams& outer,
                             std::size_t points) {
  inner.validate();
  outer.validate();
  const double lhs = inner.alpha * inner.beta;
  const double rhs = 2.0 * outer.alpha * static_cast<double>(outer.k);
  if (std::abs(lhs - rhs) > 1e-12 * std::max(std::abs(lhs), std::abs(rhs)))
    throw PreconditionError("composition requires alpha*beta == 2*a*l (got " +
                            std::to_string(lhs) + " vs " + std::to_string(rhs) + ")");
  const TriangleParams composed{outer.alpha / inner.beta, outer.beta * inner.beta,
                                2 * inner.k * outer.k};
  const double lo = -inner.support() - 1.0;
  const double hi = inner.support() + 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double a = waveform_eval(waveform_eval(t, inner), outer);
    const double b = waveform_eval(t, composed);
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

bool check_composition(const TriangleParams& inner, const TriangleParams& outer) {
  const double tol = 1e-9 * (1.0 + inner.height() * outer.beta);
  return composition_deviation(inner, outer) <= tol;
}

}  // namespace f2r
