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

#include <vector>

#include "f2r/relu_sum.hpp"

namespace f2r {

struct SinusoidEstimatorParams {
  double omega = 1.0;
  long long n = 0;
  double s = 0.5;

  void validate() const;  // throws PreconditionError
};

// ReLU(t) + ReLU(t - pi/w) - ReLU(t - pi s/w) - ReLU(t - pi (1-s)/w)
double r4_eval(double t, double s, double omega);

// (pi w / 2) sin(pi s) [R4(t) - R4(t - pi/w)]; supported on [0, 2 pi/w].
double gamma_sin_eval(double t, double s, double omega);

// sum_{i=-n-1}^{n} Gamma_sin(t - 2 pi i/w + pi/(2w)). Bounded by pi^2/4.
double gamma_cos_eval(double t, double s, double omega, long long n);

// The 16n+16 ReLU terms of Gamma_cos in summation order (no deduplication).
ReluSum gamma_cos_relus(double s, double omega, long long n);
ScalarLayer gamma_cos_layer(double s, double omega, long long n);

// Right edge of the window on which E_s Gamma_cos = cos(w t): pi/w + 2 pi n/w.
double validity_radius(double omega, long long n);

// Kinks of s -> Gamma_cos(t; s) inside (0, 1), sorted, with 0 and 1 appended.
std::vector<double> s_breakpoints(double t, double omega, long long n);

// integral_0^1 Gamma_cos(t; s) ds, split at s_breakpoints, order-10
// Gauss-Legendre on each piece.
double expectation_oracle(double t, double omega, long long n);

}  // namespace f2r
