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

// Data-parallel inner loops. Every kernel has a `_serial` twin that is the
// reference implementation; both produce bit-identical results because work
// is split into fixed blocks whose partial results are reduced in a fixed
// (pairwise) order independent of the thread count.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "f2r/quadrature.hpp"
#include "f2r/relu_net.hpp"
#include "f2r/rng.hpp"

namespace f2r::kernels {

// `points` is row-major, one point of length net.input_dim() per row.
std::vector<double> evaluate_batch_serial(const ReluNetwork& net,
                                          std::span<const double> points);
std::vector<double> evaluate_batch(const ReluNetwork& net,
                                   std::span<const double> points);

// Sum over panels [cuts[i], cuts[i+1]] of the fixed-rule integral of f.
template <class F>
double panel_integral_serial(const F& f, std::span<const double> cuts,
                             const quad::Rule& rule = quad::gl10()) {
  if (cuts.size() < 2) return 0.0;
  std::vector<double> parts(cuts.size() - 1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    parts[i] = quad::integrate(f, cuts[i], cuts[i + 1], rule);
  return quad::pairwise_sum(parts);
}

template <class F>
double panel_integral(const F& f, std::span<const double> cuts,
                      const quad::Rule& rule = quad::gl10()) {
  if (cuts.size() < 2) return 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cuts.size()) - 1;
  std::vector<double> parts(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (n > 256)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    parts[i] = quad::integrate(f, cuts[i], cuts[i + 1], rule);
  return quad::pairwise_sum(parts);
}

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMcBlock = 4096;

namespace detail {

inline MeanEstimate finish(const std::vector<double>& sums,
                           const std::vector<double>& squares, std::size_t n) {
  MeanEstimate est;
  est.samples = n;
  if (n == 0) return est;
  const double s = quad::pairwise_sum(sums);
  const double s2 = quad::pairwise_sum(squares);
  est.mean = s / static_cast<double>(n);
  if (n > 1) {
    const double var = std::max(0.0, (s2 - s * est.mean) / static_cast<double>(n - 1));
    est.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

template <class G>
void run_block(G& draw, std::uint64_t seed, std::size_t block, std::size_t n,
               double& sum, double& square) {
  Rng rng = substream(seed, block);
  const std::size_t begin = block * kMcBlock;
  const std::size_t end = std::min(n, begin + kMcBlock);
  double s = 0.0;
  double s2 = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double v = draw(rng);
    s += v;
    s2 += v * v;
  }
  sum = s;
  square = s2;
}

}  // namespace detail

// Monte-Carlo mean of draw(rng) over n draws. Block b uses substream(seed, b).
template <class G>
MeanEstimate mc_mean_serial(G draw, std::size_t n, std::uint64_t seed) {
  const std::size_t blocks = (n + kMcBlock - 1) / kMcBlock;
  std::vector<double> sums(blocks), squares(blocks);
  for (std::size_t b = 0; b < blocks; ++b)
    detail::run_block(draw, seed, b, n, sums[b], squares[b]);
  return detail::finish(sums, squares, n);
}

template <class G>
MeanEstimate mc_mean(G draw, std::size_t n, std::uint64_t seed) {
  const std::ptrdiff_t blocks = static_cast<std::ptrdiff_t>((n + kMcBlock - 1) / kMcBlock);
  std::vector<double> sums(blocks), squares(blocks);
#pragma omp parallel for schedule(dynamic) firstprivate(draw)
  for (std::ptrdiff_t b = 0; b < blocks; ++b)
    detail::run_block(draw, seed, static_cast<std::size_t>(b), n, sums[b], squares[b]);
  return detail::finish(sums, squares, n);
}

}  // namespace f2r::kernels
