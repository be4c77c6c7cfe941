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

#include "f2r/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "f2r/errors.hpp"
#include "f2r/piecewise.hpp"
#include "f2r/synthesizer.hpp"
#include "f2r/waveform.hpp"

namespace f2r {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double lemma5_floor(long long crossing, long long L, double alpha) {
  if (L < 1) throw PreconditionError("lemma5_floor: L must be >= 1");
  if (crossing >= 2 * L) return 0.0;
  const double w = 2.0 * kPi * static_cast<double>(L);
  return std::max(0.0, kPi / 16.0 * static_cast<double>(2 * L - crossing) /
                           std::pow(w, 2.0 * alpha + 1.0));
}

Theorem2Floor theorem2_floor(std::size_t N0, std::size_t D, double K, double r,
                             const FourierMeasure& measure) {
  if (N0 == 0 || D == 0) throw PreconditionError("theorem2_floor: N0 and D must be positive");
  if (!(K >= 1.0)) throw PreconditionError("theorem2_floor: K must be >= 1");
  const double d = static_cast<double>(D);
  const double n0 = static_cast<double>(N0);
  const double e = d / K;
  Theorem2Floor out;
  out.value = kPi * std::pow(d, e) /
              (32.0 * std::pow(6.0 * kPi, 1.0 / K) * std::pow(2.0 * n0, e));
  const double c0 = measure.c_alpha(0.0);
  const double c1k = measure.c_alpha(1.0 / K);
  const double combo = std::pow(r, 1.0 / K) * c1k * c0 + c0 * c0;
  out.b0 = out.value / (combo * std::pow(d / n0, e));
  return out;
}

std::string LowerBoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["crossing"] = crossing;
  j["L"] = L;
  j["alpha"] = alpha;
  j["measured_loss"] = measured_loss;
  j["lemma5_floor"] = lemma5_floor;
  j["theorem2_floor"] = theorem2_floor;
  j["theorem2_applicable"] = theorem2_applicable;
  j["satisfied"] = {satisfied.first, satisfied.second};
  return j.dump(2);
}

LowerBoundReport verify_lemma5(const ReluNetwork& net, double K, double r, long long L) {
  if (net.input_dim() != 1) throw PreconditionError("verify_lemma5: network must be 1-d");
  const auto measure = hard_instance(K, r, L);
  const auto& hp = *measure.hard_instance_params();
  LowerBoundReport rep;
  rep.L = L;
  rep.alpha = hp.alpha();
  const double w = hp.omega();
  const auto pwl = from_network_1d(net);
  rep.crossing = static_cast<long long>(crossing_number(pwl, 0.5 / std::pow(w, rep.alpha)));
  rep.measured_loss = measure_loss(net, measure, MuSpec{r}).loss;
  rep.lemma5_floor = lemma5_floor(rep.crossing, L, rep.alpha);
  const std::size_t units = net.unit_count();
  const std::size_t depth = net.depth();
  rep.theorem2_floor = theorem2_floor(units, depth, K, r, measure).value;
  rep.theorem2_applicable =
      static_cast<double>(depth) <= K &&
      static_cast<double>(L) >= telgarsky_bound(units, depth);
  rep.satisfied.first = rep.measured_loss >= rep.lemma5_floor - 1e-10;
  rep.satisfied.second =
      !rep.theorem2_applicable || rep.measured_loss >= rep.theorem2_floor * (1.0 - 1e-6);
  return rep;
}

ReluNetwork random_network(std::size_t depth, std::size_t units, Rng& rng) {
  if (depth == 0 || units < depth)
    throw PreconditionError("random_network: need at least one unit per layer");
  // Random composition of `units` into `depth` positive parts.
  std::vector<std::size_t> widths(depth, 1);
  for (std::size_t extra = units - depth; extra > 0; --extra)
    ++widths[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(depth))];
  std::cauchy_distribution<double> heavy(0.0, 1.0);
  std::normal_distribution<double> gauss;
  std::vector<LayerSpec> layers;
  std::size_t in = 1;
  for (std::size_t w : widths) {
    std::vector<double> weights(w * in), thresholds(w);
    for (auto& v : weights) v = heavy(rng);
    for (auto& v : thresholds) v = heavy(rng);
    layers.emplace_back(in, std::move(weights), std::move(thresholds));
    in = w;
  }
  std::vector<double> readout(in);
  for (auto& v : readout) v = gauss(rng);
  return ReluNetwork(1, std::move(layers), std::move(readout));
}

ReluNetwork triangle_tower(std::size_t depth, long long l) {
  if (depth == 0 || l < 1) throw PreconditionError("triangle_tower: depth and l must be >= 1");
  std::vector<LayerSpec> layers;
  const double one = 1.0;
  auto first = lift(waveform_relus({1.0, 1.0, l}), std::span<const double>(&one, 1));
  layers.push_back(std::move(first.layer));
  std::vector<double> prev = std::move(first.readout);
  // Height-one tents on [0, 1]: T_l(u - 1/2; 1/(4l), 4l).
  const double a = 1.0 / (4.0 * static_cast<double>(l));
  for (std::size_t i = 1; i < depth; ++i) {
    auto next = lift(waveform_relus({a, 4.0 * static_cast<double>(l), l}), prev, -0.5);
    layers.push_back(std::move(next.layer));
    prev = std::move(next.readout);
  }
  return ReluNetwork(1, std::move(layers), std::move(prev));
}

CrossingSweepReport crossing_bound_sweep(std::size_t D, std::size_t N0, std::size_t trials,
                                         Rng& rng,
                                         const std::filesystem::path& counterexample_dir) {
  if (trials == 0) throw PreconditionError("crossing_bound_sweep: trials must be >= 1");
  if (N0 < D) throw PreconditionError("crossing_bound_sweep: N0 must be >= D");
  std::vector<ReluNetwork> nets;
  nets.reserve(trials + 1);
  for (std::size_t t = 0; t < trials; ++t) nets.push_back(random_network(D, N0, rng));
  const long long l = static_cast<long long>((N0 / D - 1) / 4);
  const bool tower = l >= 1;
  if (tower) nets.push_back(triangle_tower(D, l));

  CrossingSweepReport rep;
  rep.trials.resize(nets.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(nets.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto& tr = rep.trials[i];
    const auto& net = nets[i];
    tr.adversarial = tower && i + 1 == count;
    tr.units = net.unit_count();
    tr.depth = net.depth();
    tr.crossing = crossing_number(from_network_1d(net), 0.5);
    tr.bound = telgarsky_bound(tr.units, tr.depth);
    tr.ratio = static_cast<double>(tr.crossing) / tr.bound;
  }
  for (std::size_t i = 0; i < rep.trials.size(); ++i) {
    const auto& tr = rep.trials[i];
    if (tr.adversarial)
      rep.max_adversarial_ratio = std::max(rep.max_adversarial_ratio, tr.ratio);
    else
      rep.max_random_ratio = std::max(rep.max_random_ratio, tr.ratio);
    if (static_cast<double>(tr.crossing) > tr.bound) {
      ++rep.violations;
      const auto path = counterexample_dir / ("counterexample_D" + std::to_string(D) + "_N" +
                                              std::to_string(N0) + "_" + std::to_string(i) +
                                              ".json");
      save_network(nets[i], path);
      rep.counterexamples.push_back(path);
    }
  }
  return rep;
}

}  // namespace f2r
