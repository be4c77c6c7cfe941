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
#include <span>
#include <vector>

#include "f2r/relu_net.hpp"

namespace f2r {

// g(t) = sum_j coeffs[j] * ReLU(t - offsets[j]) for scalar t. Building block
// for single-layer constructions; unit order is preserved when lifted.
struct ReluSum {
  std::vector<double> offsets;
  std::vector<double> coeffs;

  std::size_t size() const noexcept { return offsets.size(); }
  void add(double offset, double coeff) {
    offsets.push_back(offset);
    coeffs.push_back(coeff);
  }
  double operator()(double t) const {
    double y = 0.0;
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      const double z = t - offsets[j];
      if (z > 0.0) y += coeffs[j] * z;
    }
    return y;
  }
};

// A layer together with the read-out that turns its activations into a scalar.
struct ScalarLayer {
  LayerSpec layer;
  std::vector<double> readout;
};

// Realizes g(<w, x> + bias): unit j is ReLU(<w, x> - (offsets[j] - bias)).
inline ScalarLayer lift(const ReluSum& g, std::span<const double> w, double bias = 0.0) {
  std::vector<double> weights;
  weights.reserve(g.size() * w.size());
  std::vector<double> thresholds;
  thresholds.reserve(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    weights.insert(weights.end(), w.begin(), w.end());
    thresholds.push_back(g.offsets[j] - bias);
  }
  return {LayerSpec(w.size(), std::move(weights), std::move(thresholds)), g.coeffs};
}

// Single-layer network t -> g(t).
inline ReluNetwork as_network(const ScalarLayer& s) {
  return ReluNetwork(s.layer.input_dim(), {s.layer}, s.readout);
}

}  // namespace f2r
