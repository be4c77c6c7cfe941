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
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "f2r/relu_net.hpp"

namespace f2r {

// A continuous piecewise-linear function on the real line, stored as values at
// strictly increasing breakpoints plus the slopes of the two unbounded tails.
// Always canonical: no breakpoint separates two (nearly) collinear pieces.
// With no breakpoints the function is affine.
class PiecewiseLinear {
 public:
  // Relative slope tolerance used when merging collinear pieces.
  static constexpr double kSlopeTolerance = 1e-12;

  PiecewiseLinear() = default;  // identically zero
  PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values,
                  double left_slope, double right_slope);

  static PiecewiseLinear affine(double slope, double intercept);
  static PiecewiseLinear constant(double c) { return affine(0.0, c); }

  double operator()(double t) const;
  // Slope on the piece immediately to the right of t.
  double slope_after(double t) const;

  const std::vector<double>& breakpoints() const noexcept { return xs_; }
  const std::vector<double>& values() const noexcept { return ys_; }
  double left_slope() const noexcept { return left_slope_; }
  double right_slope() const noexcept { return right_slope_; }
  std::size_t size() const noexcept { return xs_.size(); }
  bool is_affine() const noexcept { return xs_.empty(); }

  PiecewiseLinear scaled(double c) const;
  // max(0, f), with the zero crossings inserted as breakpoints.
  PiecewiseLinear relu() const;

 private:
  void canonicalize();

  std::vector<double> xs_;
  std::vector<double> ys_;
  double left_slope_ = 0.0;
  double right_slope_ = 0.0;
  double intercept_ = 0.0;  // f(0); only meaningful when xs_ is empty
};

struct PwlTerm {
  double coef;
  const PiecewiseLinear* f;
};

// constant + sum_j coef_j * f_j, computed in O(total breakpoints * log).
PiecewiseLinear combine(std::span<const PwlTerm> terms, double constant = 0.0);

// Exact PWL form of a network with input_dim 1. Throws PreconditionError
// otherwise.
PiecewiseLinear from_network_1d(const ReluNetwork& net);

// Number of maximal intervals on which 1(f >= level) is constant.
std::size_t crossing_number(const PiecewiseLinear& f, double level);

// 2 (2 N0 / D)^D
double telgarsky_bound(std::size_t units, std::size_t depth);

// A scalar target together with the shortest period at which it oscillates
// (infinity for non-oscillating targets). Panels are split to at most a tenth
// of that period before quadrature.
struct Target {
  std::function<double(double)> f;
  double min_period = std::numeric_limits<double>::infinity();
};

// (1/2r) * integral over [-r, r] of (target - f)^2, using order-10
// Gauss-Legendre on every piece. Throws PreconditionError if r <= 0.
double l2_loss_vs_target(const PiecewiseLinear& f, const Target& target, double r);
double l2_loss_vs_target_serial(const PiecewiseLinear& f, const Target& target,
                                double r);

// Quadrature panels used by l2_loss_vs_target.
std::vector<double> loss_panels(const PiecewiseLinear& f, const Target& target,
                                double r);

// CSV dump with columns x,value.
void write_pwl_csv(const PiecewiseLinear& f, const std::filesystem::path& path);

}  // namespace f2r
