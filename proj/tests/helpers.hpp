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

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>

#include "f2r/piecewise.hpp"
#include "f2r/relu_net.hpp"

namespace f2r::test {

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

inline ReluNetwork single_relu(double w = 1.0, double t = 0.0, double a = 1.0) {
  return ReluNetwork(1, {LayerSpec(1, {w}, {t})}, {a});
}

// Every 1-d network built in the tests must respect the crossing bound.
inline void check_crossing_bound(const ReluNetwork& net, double level = 0.5) {
  if (net.input_dim() != 1) return;
  const auto cr = crossing_number(from_network_1d(net), level);
  CHECK(static_cast<double>(cr) <= telgarsky_bound(net.unit_count(), net.depth()));
}

inline std::filesystem::path tmpdir() {
  std::filesystem::path p = F2R_TEST_TMPDIR;
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace f2r::test
