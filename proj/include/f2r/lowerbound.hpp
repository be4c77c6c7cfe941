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
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "f2r/fourier.hpp"
#include "f2r/relu_net.hpp"
#include "f2r/rng.hpp"

namespace f2r {

// (pi/16)(2L - crossing) / w^(2 alpha + 1) with w = 2 pi L, clipped at 0.
double lemma5_floor(long long crossing, long long L, double alpha);

struct Theorem2Floor {
  double value = 0.0;  // pi D^(D/K) / (32 (6 pi)^(1/K) (2 N0)^(D/K))
  double b0 = 0.0;     // value / ((r^(1/K) C^(1/K) C^0 + (C^0)^2) (D/N0)^(D/K))
};

Theorem2Floor theorem2_floor(std::size_t N0, std::size_t D, double K, double r,
                             const FourierMeasure& measure);

struct LowerBoundReport {
  long long crossing = 0;
  long long L = 0;
  double alpha = 0.0;
  double measured_loss = 0.0;
  double lemma5_floor = 0.0;
  double theorem2_floor = 0.0;
  // The theorem's floor only applies for depth <= K and L >= 2 (2 N0 / D)^D.
  bool theorem2_applicable = false;
  std::pair<bool, bool> satisfied{false, false};

  std::string to_json() const;
};

// Compares a d = 1 network against hard_instance(K, r, L).
LowerBoundReport verify_lemma5(const ReluNetwork& net, double K, double r, long long L);

// Random network with the given depth and total unit count, heavy-tailed
// (Cauchy) weights and thresholds, input dimension 1.
ReluNetwork random_network(std::size_t depth, std::size_t units, Rng& rng);

// D layers of T_l blocks, each deeper block shifted so that every monotone
// piece of its input sweeps the whole support: (4l)^D + 1 crossings at level
// 1/2 with D (4l + 1) units.
ReluNetwork triangle_tower(std::size_t depth, long long l);

struct CrossingTrial {
  bool adversarial = false;
  std::size_t units = 0;
  std::size_t depth = 0;
  std::size_t crossing = 0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct CrossingSweepReport {
  std::vector<CrossingTrial> trials;
  std::size_t violations = 0;
  double max_random_ratio = 0.0;
  double max_adversarial_ratio = 0.0;
  std::vector<std::filesystem::path> counterexamples;
};

// `trials` random networks with depth D and N0 units plus the largest
// triangle tower of depth D that fits in N0 units. Violations of the
// crossing bound are written as network files into `counterexample_dir`
// (the current directory when empty).
CrossingSweepReport crossing_bound_sweep(std::size_t D, std::size_t N0, std::size_t trials,
                                         Rng& rng,
                                         const std::filesystem::path& counterexample_dir = {});

}  // namespace f2r
