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

#include "f2r/piecewise.hpp"
#include "f2r/relu_sum.hpp"

namespace f2r {

// Triangle waveform T_k(.; alpha, beta): 2k adjacent tents of half-width
// alpha and height alpha * beta, supported on [-2 k alpha, 2 k alpha].
struct TriangleParams {
  double alpha = 1.0;
  double beta = 1.0;
  long long k = 1;

  double height() const noexcept { return alpha * beta; }
  double support() const noexcept { return 2.0 * static_cast<double>(k) * alpha; }
  void validate() const;  // throws PreconditionError
};

// beta t on [0, alpha], 2 alpha beta - beta t on (alpha, 2 alpha], else 0.
double triangle_eval(double t, double alpha, double beta);

// Literal sum of the 2k shifted tents.
double waveform_eval(double t, const TriangleParams& p);

// The 4k+1 ReLU terms: offsets -2k alpha + j alpha, slope changes
// +beta, -2beta, +2beta, ..., -2beta, +beta.
ReluSum waveform_relus(const TriangleParams& p);

// One layer with input dimension 1 and its read-out.
ScalarLayer waveform_layer(const TriangleParams& p);

// Exact breakpoint form of T_k.
PiecewiseLinear waveform_pwl(const TriangleParams& p);

// Max |T_l(T_k(t)) - T_{2kl}(t; a/beta, b beta)| over `points` uniform grid
// points on [-2k alpha - 1, 2k alpha + 1]. Throws PreconditionError unless
// alpha beta == 2 a l (relative 1e-12).
double composition_deviation(const TriangleParams& inner, const TriangleParams& outer,
                             std::size_t points = 10000);

// composition_deviation <= 1e-9 (1 + alpha beta b).
bool check_composition(const TriangleParams& inner, const TriangleParams& outer);

}  // namespace f2r
