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

#include "f2r/sinusoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "f2r/errors.hpp"
#include "f2r/quadrature.hpp"

namespace f2r {

namespace {

constexpr double kPi = std::numbers::pi;

inline double relu(double z) { return z > 0.0 ? z : 0.0; }

// Offset of the i-th summand: Gamma_cos sums Gamma_sin(t - shift(i)).
inline double shift(long long i, double omega) {
  return (2.0 * kPi * static_cast<double>(i) - 0.5 * kPi) / omega;
}

void check(double s, double omega, long long n) {
  SinusoidEstimatorParams{omega, n, s}.validate();
}

}  // namespace

void SinusoidEstimatorParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw PreconditionError("sinusoid: omega must be positive");
  if (n < 0) throw PreconditionError("sinusoid: n must be nonnegative");
  if (!(s >= 0.0 && s <= 1.0)) throw PreconditionError("sinusoid: s must lie in [0, 1]");
}

double r4_eval(double t, double s, double omega) {
  const double p = kPi / omega;
  return relu(t) + relu(t - p) - relu(t - s * p) - relu(t - (1.0 - s) * p);
}

double gamma_sin_eval(double t, double s, double omega) {
  if (t <= 0.0 || t >= 2.0 * kPi / omega) return 0.0;
  const double amp = 0.5 * kPi * omega * std::sin(kPi * s);
  return amp * (r4_eval(t, s, omega) - r4_eval(t - kPi / omega, s, omega));
}

double gamma_cos_eval(double t, double s, double omega, long long n) {
  double sum = 0.0;
  for (long long i = -n - 1; i <= n; ++i) sum += gamma_sin_eval(t - shift(i, omega), s, omega);
  return sum;
}

ReluSum gamma_cos_relus(double s, double omega, long long n) {
  check(s, omega, n);
  const double p = kPi / omega;
  const double amp = 0.5 * kPi * omega * std::sin(kPi * s);
  ReluSum g;
  g.offsets.reserve(static_cast<std::size_t>(16 * n + 16));
  g.coeffs.reserve(static_cast<std::size_t>(16 * n + 16));
  for (long long i = -n - 1; i <= n; ++i) {
    for (int half = 0; half < 2; ++half) {
      const double c = shift(i, omega) + half * p;
      const double sign = half == 0 ? amp : -amp;
      g.add(c, sign);
      g.add(c + p, sign);
      g.add(c + s * p, -sign);
      g.add(c + (1.0 - s) * p, -sign);
    }
  }
  return g;
}

ScalarLayer gamma_cos_layer(double s, double omega, long long n) {
  const double one = 1.0;
  return lift(gamma_cos_relus(s, omega, n), std::span<const double>(&one, 1));
}

double validity_radius(double omega, long long n) {
  return (kPi + 2.0 * kPi * static_cast<double>(n)) / omega;
}

std::vector<double> s_breakpoints(double t, double omega, long long n) {
  // R4(v; s) has kinks in s where v = pi s/w or v = pi (1-s)/w.
  const double q = omega / kPi;
  std::vector<double> cuts{0.0, 1.0};
  for (long long i = -n - 1; i <= n; ++i) {
    const double v0 = t - shift(i, omega);
    if (v0 <= 0.0 || v0 >= 2.0 * kPi / omega) continue;
    for (double v : {v0, v0 - kPi / omega}) {
      for (double c : {v * q, 1.0 - v * q})
        if (c > 0.0 && c < 1.0) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

double expectation_oracle(double t, double omega, long long n) {
  check(0.0, omega, n);
  const auto cuts = s_breakpoints(t, omega, n);
  return quad::integrate_pieces([&](double s) { return gamma_cos_eval(t, s, omega, n); },
                                std::span<const double>(cuts));
}

}  // namespace f2r
