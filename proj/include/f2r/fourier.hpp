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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "f2r/rng.hpp"

namespace f2r {

// One point mass of the Fourier measure. `weight` already includes every
// normalization, so it is exactly the atom's contribution to C^0.
struct FourierAtom {
  std::vector<double> xi;
  double weight = 0.0;
  double phase = 0.0;
};

struct Frequency {
  std::vector<double> xi;
  double theta = 0.0;
};

// A rotation-invariant density |F| with constant phase.
struct RadialDensity {
  std::string family;
  // log of (2pi)^-d |F| at radius rho, already multiplied by the sphere area
  // rho^(d-1) |S^(d-1)|: integrating exp(log_radial(rho)) rho^alpha d rho
  // over [0, inf) gives C^alpha.
  std::function<double(double)> log_radial;
  // Closed-form C^alpha, if known.
  std::function<double(double)> c_alpha_closed;
  // Draws the radius of a nu-distributed frequency.
  std::function<double(Rng&)> sample_radius;
  // Closed-form target, if known.
  std::function<double(std::span<const double>)> target;
  double phase = 0.0;
  // Upper limit used by the numeric radial integral.
  double radial_cutoff = 0.0;
};

// Parameters of the lower-bound instance f(x) = (1 + cos(w x / r)) / (2 w^a).
struct HardInstanceParams {
  double K = 1.0;
  double r = 1.0;
  long long L = 1;
  double omega() const;
  double alpha() const { return 1.0 / (2.0 * K); }
};

class FourierMeasure {
 public:
  // Throws PreconditionError on empty lists, mismatched dimensions,
  // nonpositive weights or phases outside [-pi, pi].
  static FourierMeasure from_atoms(std::size_t dim, std::vector<FourierAtom> atoms);
  static FourierMeasure from_density(std::size_t dim, RadialDensity density);

  std::size_t dim() const noexcept { return dim_; }
  bool is_atomic() const noexcept { return !density_.has_value(); }
  const std::vector<FourierAtom>& atoms() const noexcept { return atoms_; }
  const RadialDensity& density() const { return *density_; }
  const std::optional<HardInstanceParams>& hard_instance_params() const noexcept {
    return hard_;
  }
  const std::string& name() const noexcept { return name_; }

  // C^alpha. Throws PreconditionError for alpha < 0.
  double c_alpha(double alpha) const;
  // Density only: adaptive quadrature of the radial integral. Returns a
  // non-finite value if the integral does not converge.
  double c_alpha_numeric(double alpha) const;

  // Throws UnsupportedError for densities without a closed form.
  double target_eval(std::span<const double> x) const;
  double target_eval(double x) const;

  Frequency sample_nu(Rng& rng) const;

  // Shortest period 2 pi / |xi| over the atoms (infinity for densities or a
  // lone zero frequency).
  double min_period() const;

 private:
  friend FourierMeasure hard_instance(double K, double r, long long L);

  std::size_t dim_ = 1;
  std::vector<FourierAtom> atoms_;
  std::vector<double> cumulative_;
  std::optional<RadialDensity> density_;
  std::optional<HardInstanceParams> hard_;
  std::string name_ = "atoms";
};

// |F(xi)| proportional to exp(-|xi|^2 / 2); f(x) = exp(-|x|^2 / 2).
FourierMeasure gaussian_measure(std::size_t d);

// Three atoms at 0 and +-w/r, w = 2 pi L, with C^0 = w^(-1/(2K)).
FourierMeasure hard_instance(double K, double r, long long L);

// Atoms at +-n with weight 1/(2 n^a): f(x) = cos(n x) / n^a.
FourierMeasure scaled_cosine(double n, double a);

}  // namespace f2r
