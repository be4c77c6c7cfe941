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

#include "f2r/kernels.hpp"

#include <string>

#include "f2r/errors.hpp"

namespace f2r::kernels {

namespace {

std::size_t point_count(const ReluNetwork& net, std::span<const double> points) {
  const std::size_t d = net.input_dim();
  if (points.size() % d != 0)
    throw PreconditionError("evaluate_batch: " + std::to_string(points.size()) +
                            " coordinates is not a multiple of input_dim " +
                            std::to_string(d));
  return points.size() / d;
}

}  // namespace

std::vector<double> evaluate_batch_serial(const ReluNetwork& net,
                                          std::span<const double> points) {
  const std::size_t n = point_count(net, points);
  const std::size_t d = net.input_dim();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = net.evaluate(points.subspan(i * d, d));
  return out;
}

std::vector<double> evaluate_batch(const ReluNetwork& net,
                                   std::span<const double> points) {
  const std::size_t n = point_count(net, points);
  const std::size_t d = net.input_dim();
  const std::size_t width = net.max_width();
  std::vector<double> out(n);
#pragma omp parallel
  {
    std::vector<double> a(std::max(width, d)), b(width);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      const auto x = points.subspan(static_cast<std::size_t>(i) * d, d);
      std::copy(x.begin(), x.end(), a.begin());
      std::size_t w = d;
      for (const auto& layer : net.layers()) {
        layer.apply(std::span<const double>(a.data(), w),
                    std::span<double>(b.data(), layer.units()));
        w = layer.units();
        std::swap(a, b);
      }
      double y = 0.0;
      const auto& readout = net.readout();
      for (std::size_t j = 0; j < w; ++j) y += readout[j] * a[j];
      out[i] = y;
    }
  }
  return out;
}

}  // namespace f2r::kernels
