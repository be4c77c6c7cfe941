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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "f2r/fourier.hpp"
#include "f2r/relu_net.hpp"

namespace f2r {

struct SynthesisConfig {
  std::size_t depth = 1;
  std::size_t budget = 1024;
  double radius = 1.0;
  double smoothness = 1.0;                // K
  std::optional<std::size_t> samples;     // m; chosen automatically when empty
  std::size_t retries = 8;                // M
  std::uint64_t seed = 0;
  std::size_t mc_samples = 20000;         // loss estimate for d > 1

  void validate() const;  // throws PreconditionError
};

// Depth-1 estimator of cos(<xi, x> + theta) for the draw s. For xi == 0 a
// two-unit constant cos(theta) on x_1 >= -r - 1.
ReluNetwork shallow_cosine_net(std::span<const double> xi, double theta, double s, double r);

// Construction parameters of the depth-D estimator. `l` is the number of
// tents per triangle layer; `alphas[i]` is the half-width of layer i + 1.
struct DeepCosineParams {
  double norm = 0.0;
  std::size_t depth = 2;
  double r = 1.0;
  double omega = 0.0;
  long long n = 0;
  double beta = 0.0;
  double gamma = 0.0;
  long long l = 0;
  long long k = 0;      // 2^(D-2) l^(D-1)
  double alpha = 0.0;   // (2n+1) pi / norm, half-width of the composed chain
  std::vector<double> alphas;
  int increments = 0;   // extra tents added to satisfy coverage
  bool within_unit_bound = true;

  std::size_t unit_count() const;
};

// Throws PreconditionError for norm <= 0 or depth < 2, ConstructionError if
// the coverage condition still fails after three increments of l.
DeepCosineParams deep_cosine_params(double norm, double r, std::size_t depth);

// alpha_i gamma == 2 alpha_{i+1} l (relative 1e-12) at every junction, and
// alphas[0] == (2l)^(D-2) alpha.
bool alpha_chain_consistent(const DeepCosineParams& p);

// Max deviation between the composed triangle layers and T_k(.; alpha, beta)
// over a grid on the first layer's support.
double chain_deviation(const DeepCosineParams& p, std::size_t points = 2001);

// (8/pi + 2D - 2)(r |xi|)^(1/D) + 5D + 27
double deep_unit_bound(double norm, double r, std::size_t depth);

ReluNetwork build_deep_cosine_net(const DeepCosineParams& p, std::span<const double> direction,
                                  double theta, double s);
ReluNetwork deep_cosine_net(std::span<const double> xi, double theta, double s, double r,
                            std::size_t depth);

// Constant cos(theta) with the given depth (one unit per layer for depth >= 2).
ReluNetwork constant_net(double value, std::size_t input_dim, std::size_t depth);

// Dispatches on depth and xi == 0.
ReluNetwork cosine_subnet(const Frequency& f, double s, double r, std::size_t depth);

struct SampleCount {
  std::size_t m = 1;
  double d0 = 0.0;
  bool tiny_budget = false;  // N0^(D/K) <= D0: the zero network is returned
};

// D0 = 2 [(8/pi + 2D - 2)^(D/K) r^(1/K) C^(1/K) / C^0 + (5D + 27)^(D/K)],
// m = max(1, floor(N0^(D/K) / D0)).
SampleCount choose_sample_count(const FourierMeasure& measure, const SynthesisConfig& cfg);

// 3 pi^4 (2D+1)^(D/K) / (4 N0^(D/K)) r^(1/K) C^(1/K) C^0
//   + 3 pi^4 (5D+27)^(D/K) / (4 N0^(D/K)) (C^0)^2
double upper_bound(std::size_t depth, double K, std::size_t budget, double r, double c0,
                   double c1k);
// A0 (D/N0)^(D/K) (r^(1/K) C^(1/K) C^0 + (C^0)^2) with
// A0 = (3 pi^4 / 4) max((2D+1)^(D/K), (5D+27)^(D/K)).
double upper_bound_a0(std::size_t depth, double K, std::size_t budget, double r, double c0,
                      double c1k);

struct MuSpec {
  double r = 1.0;
  std::size_t mc_samples = 20000;
  std::uint64_t seed = 0;
  bool force_mc = false;  // Monte Carlo even when d == 1
};

struct LossEstimate {
  double loss = 0.0;
  double std_error = 0.0;
  bool exact = true;
};

// Mean squared error against the uniform measure on [-r, r] (d == 1, exact
// piecewise integration) or on the ball of radius r (Monte Carlo).
LossEstimate measure_loss(const ReluNetwork& net, const FourierMeasure& measure,
                          const MuSpec& mu);

struct AttemptRecord {
  std::size_t attempt = 0;
  std::size_t units = 0;
  bool accepted = false;
  double loss = 0.0;
};

struct SynthesisReport {
  std::uint64_t seed = 0;
  std::size_t depth = 1;
  double K = 1.0;
  std::size_t budget = 0;
  std::size_t m = 0;
  double d0 = 0.0;
  bool tiny_budget = false;
  bool zero_fallback = false;
  std::vector<AttemptRecord> attempts;
  std::size_t unit_count = 0;
  double loss = 0.0;
  double loss_std_error = 0.0;
  double bound = 0.0;
  double bound_a0 = 0.0;
  double c0 = 0.0;
  double c1k = 0.0;

  std::string to_json() const;
};

std::pair<ReluNetwork, SynthesisReport> synthesize(const FourierMeasure& measure,
                                                   const SynthesisConfig& cfg);

// E_s of a network family whose only s-dependence is in the last layer's
// thresholds (affine in s) and the read-out (smooth in s). The integral is
// split at every s where a last-layer unit switches, then order-10
// Gauss-Legendre is applied to the real network built at each node.
class SExpectation {
 public:
  using Builder = std::function<ReluNetwork(double)>;
  // Throws ConstructionError if the family does not have that structure.
  explicit SExpectation(Builder builder);

  double operator()(std::span<const double> x) const;
  double operator()(double x) const { return (*this)(std::span<const double>(&x, 1)); }

 private:
  Builder builder_;
  ReluNetwork net0_;
  std::vector<double> t0_;
  std::vector<double> t1_;
};

}  // namespace f2r
