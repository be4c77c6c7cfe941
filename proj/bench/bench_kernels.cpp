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

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "f2r/fourier.hpp"
#include "f2r/kernels.hpp"
#include "f2r/piecewise.hpp"
#include "f2r/synthesizer.hpp"

namespace {

f2r::ReluNetwork sample_net() {
  const double xi = 2000.0;
  return f2r::deep_cosine_net({&xi, 1}, 0.3, 0.41, 1.0, 2);
}

std::vector<double> grid(std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
  return xs;
}

void BM_EvaluateBatchSerial(benchmark::State& st) {
  const auto net = sample_net();
  const auto xs = grid(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(f2r::kernels::evaluate_batch_serial(net, xs));
}
void BM_EvaluateBatch(benchmark::State& st) {
  const auto net = sample_net();
  const auto xs = grid(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(f2r::kernels::evaluate_batch(net, xs));
}
BENCHMARK(BM_EvaluateBatchSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_EvaluateBatch)->Arg(1 << 12)->Arg(1 << 16);

void BM_LossSerial(benchmark::State& st) {
  const auto pwl = f2r::from_network_1d(sample_net());
  const f2r::Target t{[](double x) { return std::cos(2000.0 * x + 0.3); }, 2.0 * M_PI / 2000.0};
  for (auto _ : st) benchmark::DoNotOptimize(f2r::l2_loss_vs_target_serial(pwl, t, 1.0));
}
void BM_Loss(benchmark::State& st) {
  const auto pwl = f2r::from_network_1d(sample_net());
  const f2r::Target t{[](double x) { return std::cos(2000.0 * x + 0.3); }, 2.0 * M_PI / 2000.0};
  for (auto _ : st) benchmark::DoNotOptimize(f2r::l2_loss_vs_target(pwl, t, 1.0));
}
BENCHMARK(BM_LossSerial);
BENCHMARK(BM_Loss);

double mc_draw(f2r::Rng& rng) {
  const double x = f2r::uniform01(rng);
  return std::exp(-x * x);
}
void BM_McMeanSerial(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(f2r::kernels::mc_mean_serial(mc_draw, 1 << 20, 7));
}
void BM_McMean(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(f2r::kernels::mc_mean(mc_draw, 1 << 20, 7));
}
BENCHMARK(BM_McMeanSerial);
BENCHMARK(BM_McMean);

}  // namespace

BENCHMARK_MAIN();
