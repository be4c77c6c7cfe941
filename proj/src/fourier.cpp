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

#include "f2r/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "f2r/errors.hpp"
#include "f2r/quadrature.hpp"

namespace f2r {

namespace {

constexpr double kPi = std::numbers::pi;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double power(double base, double e) { return e == 0.0 ? 1.0 : std::pow(base, e); }

}  // namespace

double HardInstanceParams::omega() const { return 2.0 * kPi * static_cast<double>(L); }

FourierMeasure FourierMeasure::from_atoms(std::size_t dim, std::vector<FourierAtom> atoms) {
  if (dim == 0) throw PreconditionError("measure: dimension must be positive");
  if (atoms.empty()) throw PreconditionError("measure: atom list is empty");
  FourierMeasure m;
  m.dim_ = dim;
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& a = atoms[i];
    const std::string at = "measure: atom " + std::to_string(i);
    if (a.xi.size() != dim) throw PreconditionError(at + " has wrong dimension");
    for (double x : a.xi)
      if (!std::isfinite(x)) throw PreconditionError(at + " has a non-finite frequency");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw PreconditionError(at + " needs a positive weight");
    if (!(a.phase >= -kPi && a.phase <= kPi))
      throw PreconditionError(at + " has phase outside [-pi, pi]");
    total += a.weight;
    m.cumulative_.push_back(total);
  }
  m.atoms_ = std::move(atoms);
  return m;
}

FourierMeasure FourierMeasure::from_density(std::size_t dim, RadialDensity density) {
  if (dim == 0) throw PreconditionError("measure: dimension must be positive");
  if (!density.log_radial || !density.sample_radius)
    throw PreconditionError("measure: density needs a radial integrand and a sampler");
  FourierMeasure m;
  m.dim_ = dim;
  m.name_ = density.family;
  m.density_ = std::move(density);
  return m;
}

double FourierMeasure::c_alpha(double alpha) const {
  if (!(alpha >= 0.0)) throw PreconditionError("c_alpha: alpha must be nonnegative");
  if (density_) {
    if (density_->c_alpha_closed) return density_->c_alpha_closed(alpha);
    return c_alpha_numeric(alpha);
  }
  double sum = 0.0;
  for (const auto& a : atoms_) sum += a.weight * power(norm(a.xi), alpha);
  return sum;
}

double FourierMeasure::c_alpha_numeric(double alpha) const {
  if (!density_) return c_alpha(alpha);
  if (!(alpha >= 0.0)) throw PreconditionError("c_alpha: alpha must be nonnegative");
  const auto& lr = density_->log_radial;
  const auto f = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    return std::exp(lr(rho) + alpha * std::log(rho));
  };
  const double cutoff = density_->radial_cutoff;
  const double value = quad::integrate_adaptive(f, 0.0, cutoff, 1e-13, 0.0, 60);
  // Tail check: a convergent density is negligible past the cutoff.
  const double tail = quad::integrate_adaptive(f, cutoff, 2.0 * cutoff, 1e-6, 0.0, 30);
  if (!(tail <= 1e-10 * value)) return std::numeric_limits<double>::infinity();
  return value;
}

double FourierMeasure::target_eval(std::span<const double> x) const {
  if (x.size() != dim_) throw PreconditionError("target_eval: dimension mismatch");
  if (density_) {
    if (!density_->target)
      throw UnsupportedError("target_eval: density '" + density_->family +
                             "' has no closed-form target");
    return density_->target(x);
  }
  double sum = 0.0;
  for (const auto& a : atoms_) {
    double dot = a.phase;
    for (std::size_t i = 0; i < dim_; ++i) dot += a.xi[i] * x[i];
    sum += a.weight * std::cos(dot);
  }
  return sum;
}

double FourierMeasure::target_eval(double x) const {
  return target_eval(std::span<const double>(&x, 1));
}

Frequency FourierMeasure::sample_nu(Rng& rng) const {
  if (density_) {
    const double radius = density_->sample_radius(rng);
    std::normal_distribution<double> gauss;
    std::vector<double> dir(dim_);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (auto& v : dir) {
        v = gauss(rng);
        n2 += v * v;
      }
    } while (n2 == 0.0);
    const double scale = radius / std::sqrt(n2);
    for (auto& v : dir) v *= scale;
    return {std::move(dir), density_->phase};
  }
  const double u = uniform01(rng) * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  const auto& a = atoms_[static_cast<std::size_t>(it - cumulative_.begin())];
  return {a.xi, a.phase};
}

double FourierMeasure::min_period() const {
  if (density_) return std::numeric_limits<double>::infinity();
  double top = 0.0;
  for (const auto& a : atoms_) top = std::max(top, norm(a.xi));
  return top > 0.0 ? 2.0 * kPi / top : std::numeric_limits<double>::infinity();
}

FourierMeasure gaussian_measure(std::size_t d) {
  if (d == 0) throw PreconditionError("gaussian_measure: d must be >= 1");
  const double dd = static_cast<double>(d);
  RadialDensity g;
  g.family = "gaussian";
  // (2pi)^(-d/2) exp(-rho^2/2) * rho^(d-1) * 2 pi^(d/2) / Gamma(d/2)
  const double log_const = std::log(2.0) - 0.5 * dd * std::log(2.0) - std::lgamma(0.5 * dd);
  g.log_radial = [=](double rho) {
    return log_const + (dd - 1.0) * std::log(rho) - 0.5 * rho * rho;
  };
  g.c_alpha_closed = [=](double alpha) {
    return std::exp(0.5 * alpha * std::log(2.0) + std::lgamma(0.5 * (dd + alpha)) -
                    std::lgamma(0.5 * dd));
  };
  g.sample_radius = [=](Rng& rng) {
    std::chi_squared_distribution<double> chi2(dd);
    return std::sqrt(chi2(rng));
  };
  g.target = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::exp(-0.5 * s);
  };
  g.radial_cutoff = std::sqrt(dd) + 40.0;
  return FourierMeasure::from_density(d, std::move(g));
}

FourierMeasure hard_instance(double K, double r, long long L) {
  if (!(K >= 1.0)) throw PreconditionError("hard_instance: K must be >= 1");
  if (!(r > 0.0)) throw PreconditionError("hard_instance: r must be positive");
  if (L < 1) throw PreconditionError("hard_instance: L must be >= 1");
  HardInstanceParams p{K, r, L};
  const double w = p.omega();
  const double scale = std::pow(w, -p.alpha());
  auto m = FourierMeasure::from_atoms(1, {{{0.0}, 0.5 * scale, 0.0},
                                          {{w / r}, 0.25 * scale, 0.0},
                                          {{-w / r}, 0.25 * scale, 0.0}});
  m.hard_ = p;
  m.name_ = "hard_instance";
  return m;
}

FourierMeasure scaled_cosine(double n, double a) {
  if (!(n > 0.0)) throw PreconditionError("scaled_cosine: n must be positive");
  const double w = 0.5 * std::pow(n, -a);
  return FourierMeasure::from_atoms(1, {{{n}, w, 0.0}, {{-n}, w, 0.0}});
}

}  // namespace f2r
