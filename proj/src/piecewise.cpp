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

#include "f2r/piecewise.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "f2r/errors.hpp"
#include "f2r/kernels.hpp"

namespace f2r {

namespace {

bool slopes_equal(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= PiecewiseLinear::kSlopeTolerance * scale;
}

// True when moving away from an endpoint with value y (relative to level)
// along a tail of slope s, the function crosses the level.
bool tail_crosses(double y, double s_outward) {
  return (y > 0.0 && s_outward < 0.0) || (y < 0.0 && s_outward > 0.0);
}

// Points where f - level changes sign strictly, merged with the breakpoints.
// Used by relu() (level 0) and crossing_number().
std::vector<double> with_level_crossings(const PiecewiseLinear& f, double level) {
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  std::vector<double> out;
  if (xs.empty()) {
    const double a = f.left_slope();
    if (a != 0.0) out.push_back((level - f(0.0)) / a);
    return out;
  }
  out.reserve(xs.size() * 2 + 2);
  const double y0 = ys.front() - level;
  if (tail_crosses(y0, -f.left_slope())) {
    const double xc = xs.front() - y0 / f.left_slope();
    if (xc < xs.front()) out.push_back(xc);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.push_back(xs[i]);
    if (i + 1 == xs.size()) break;
    const double a = ys[i] - level;
    const double b = ys[i + 1] - level;
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      const double xc = xs[i] + (xs[i + 1] - xs[i]) * (a / (a - b));
      if (xc > xs[i] && xc < xs[i + 1]) out.push_back(xc);
    }
  }
  const double yn = ys.back() - level;
  if (tail_crosses(yn, f.right_slope())) {
    const double xc = xs.back() - yn / f.right_slope();
    if (xc > xs.back()) out.push_back(xc);
  }
  return out;
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<double> breakpoints,
                                 std::vector<double> values, double left_slope,
                                 double right_slope)
    : xs_(std::move(breakpoints)),
      ys_(std::move(values)),
      left_slope_(left_slope),
      right_slope_(right_slope) {
  if (xs_.size() != ys_.size())
    throw PreconditionError("pwl: breakpoint and value counts differ");
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i]))
      throw PreconditionError("pwl: non-finite breakpoint or value");
    if (i > 0 && !(xs_[i] > xs_[i - 1]))
      throw PreconditionError("pwl: breakpoints must be strictly increasing");
  }
  if (!std::isfinite(left_slope_) || !std::isfinite(right_slope_))
    throw PreconditionError("pwl: non-finite tail slope");
  if (xs_.empty() && !slopes_equal(left_slope_, right_slope_))
    throw PreconditionError("pwl: an affine function needs equal tail slopes");
  canonicalize();
}

PiecewiseLinear PiecewiseLinear::affine(double slope, double intercept) {
  PiecewiseLinear f;
  f.left_slope_ = f.right_slope_ = slope;
  f.intercept_ = intercept;
  return f;
}

void PiecewiseLinear::canonicalize() {
  if (xs_.empty()) return;
  std::vector<double> kx, ky;
  kx.reserve(xs_.size());
  ky.reserve(ys_.size());
  const std::size_t m = xs_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double s_in = kx.empty() ? left_slope_ : (ys_[i] - ky.back()) / (xs_[i] - kx.back());
    const double s_out =
        i + 1 == m ? right_slope_ : (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    if (slopes_equal(s_in, s_out)) continue;
    kx.push_back(xs_[i]);
    ky.push_back(ys_[i]);
  }
  if (kx.empty()) {
    intercept_ = ys_.front() - left_slope_ * xs_.front();
    right_slope_ = left_slope_;
  }
  xs_ = std::move(kx);
  ys_ = std::move(ky);
}

double PiecewiseLinear::operator()(double t) const {
  if (xs_.empty()) return intercept_ + left_slope_ * t;
  if (t <= xs_.front()) return ys_.front() + left_slope_ * (t - xs_.front());
  if (t >= xs_.back()) return ys_.back() + right_slope_ * (t - xs_.back());
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - xs_.begin());  // xs_[j-1] <= t < xs_[j]
  const double w = (t - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
  return ys_[j - 1] + w * (ys_[j] - ys_[j - 1]);
}

double PiecewiseLinear::slope_after(double t) const {
  if (xs_.empty() || t < xs_.front()) return left_slope_;
  if (t >= xs_.back()) return right_slope_;
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - xs_.begin());
  return (ys_[j] - ys_[j - 1]) / (xs_[j] - xs_[j - 1]);
}

PiecewiseLinear PiecewiseLinear::scaled(double c) const {
  if (xs_.empty()) return affine(c * left_slope_, c * intercept_);
  std::vector<double> ys(ys_.size());
  for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = c * ys_[i];
  return PiecewiseLinear(xs_, std::move(ys), c * left_slope_, c * right_slope_);
}

PiecewiseLinear PiecewiseLinear::relu() const {
  if (xs_.empty() && left_slope_ == 0.0) return constant(std::max(0.0, intercept_));
  std::vector<double> xs = with_level_crossings(*this, 0.0);
  std::vector<double> ys(xs.size());
  // Breakpoints keep their stored values; inserted crossings are exact zeros.
  std::size_t k = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (k < xs_.size() && xs[i] == xs_[k]) {
      ys[i] = std::max(0.0, ys_[k]);
      ++k;
    } else {
      ys[i] = 0.0;
    }
  }
  const double left = left_slope_ < 0.0 ? left_slope_ : 0.0;
  const double right = right_slope_ > 0.0 ? right_slope_ : 0.0;
  return PiecewiseLinear(std::move(xs), std::move(ys), left, right);
}

PiecewiseLinear combine(std::span<const PwlTerm> terms, double constant) {
  std::vector<double> xs;
  double left = 0.0;
  double right = 0.0;
  std::size_t total = 0;
  for (const auto& t : terms) total += t.f->size();
  xs.reserve(total);
  for (const auto& t : terms) {
    if (t.coef == 0.0) continue;
    left += t.coef * t.f->left_slope();
    right += t.coef * t.f->right_slope();
    xs.insert(xs.end(), t.f->breakpoints().begin(), t.f->breakpoints().end());
  }

  auto exact_value = [&](double x) {
    double v = constant;
    for (const auto& t : terms)
      if (t.coef != 0.0) v += t.coef * (*t.f)(x);
    return v;
  };

  if (xs.empty()) return PiecewiseLinear::affine(left, exact_value(0.0));

  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // Summing slope changes drifts badly with large weights; evaluate instead.
  std::vector<double> ys(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) ys[k] = exact_value(xs[k]);
  return PiecewiseLinear(std::move(xs), std::move(ys), left, right);
}

PiecewiseLinear from_network_1d(const ReluNetwork& net) {
  if (net.input_dim() != 1)
    throw PreconditionError("from_network_1d: input_dim is " +
                            std::to_string(net.input_dim()) + ", expected 1");
  const auto& first = net.layer(0);
  std::vector<PiecewiseLinear> h(first.units());
  for (std::size_t u = 0; u < first.units(); ++u)
    h[u] = PiecewiseLinear::affine(first.weight(u, 0), -first.threshold(u)).relu();

  auto distinct_breakpoints = [](const std::vector<PiecewiseLinear>& fs) {
    std::vector<double> all;
    for (const auto& f : fs) all.insert(all.end(), f.breakpoints().begin(), f.breakpoints().end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  };
  std::size_t prev_breaks = distinct_breakpoints(h);
  if (prev_breaks > first.units())
    throw std::logic_error("from_network_1d: first layer breakpoint bound violated");

  for (std::size_t li = 1; li < net.depth(); ++li) {
    const auto& layer = net.layer(li);
    std::vector<PiecewiseLinear> next(layer.units());
    const std::ptrdiff_t units = static_cast<std::ptrdiff_t>(layer.units());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t u = 0; u < units; ++u) {
      std::vector<PwlTerm> terms;
      const auto row = layer.row(static_cast<std::size_t>(u));
      for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0.0) terms.push_back({row[j], &h[j]});
      next[u] = combine(terms, -layer.threshold(static_cast<std::size_t>(u))).relu();
    }
    h = std::move(next);
    const std::size_t breaks = distinct_breakpoints(h);
    if (breaks > prev_breaks + (prev_breaks + 1) * layer.units())
      throw std::logic_error("from_network_1d: breakpoint growth bound violated at layer " +
                             std::to_string(li + 1));
    prev_breaks = breaks;
  }

  std::vector<PwlTerm> out;
  out.reserve(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) out.push_back({net.readout()[j], &h[j]});
  return combine(out);
}

std::size_t crossing_number(const PiecewiseLinear& f, double level) {
  const std::vector<double> pts = with_level_crossings(f, level);
  if (pts.empty()) return 1;
  auto above = [&](double x) { return f(x) >= level; };
  std::size_t runs = 1;
  bool current = above(pts.front() - (1.0 + std::abs(pts.front())));
  auto visit = [&](bool v) {
    if (v != current) {
      ++runs;
      current = v;
    }
  };
  const auto& xs = f.breakpoints();
  const auto& ys = f.values();
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // Stored values at breakpoints avoid re-interpolation.
    if (k < xs.size() && pts[i] == xs[k]) {
      visit(ys[k] >= level);
      ++k;
    } else {
      visit(above(pts[i]));
    }
    const double next = i + 1 < pts.size() ? 0.5 * (pts[i] + pts[i + 1])
                                           : pts[i] + (1.0 + std::abs(pts[i]));
    visit(above(next));
  }
  return runs;
}

double telgarsky_bound(std::size_t units, std::size_t depth) {
  if (units == 0 || depth == 0)
    throw PreconditionError("telgarsky_bound: units and depth must be positive");
  const double d = static_cast<double>(depth);
  return 2.0 * std::pow(2.0 * static_cast<double>(units) / d, d);
}

std::vector<double> loss_panels(const PiecewiseLinear& f, const Target& target,
                                double r) {
  if (!(r > 0.0)) throw PreconditionError("l2 loss: radius must be positive");
  std::vector<double> cuts{-r};
  for (double x : f.breakpoints())
    if (x > -r && x < r) cuts.push_back(x);
  cuts.push_back(r);
  const double max_len = target.min_period / 10.0;
  if (!std::isfinite(max_len)) return cuts;
  std::vector<double> panels;
  panels.reserve(cuts.size() + static_cast<std::size_t>(2.0 * r / max_len) + 1);
  panels.push_back(cuts.front());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    const auto pieces = static_cast<std::size_t>(std::ceil(len / max_len));
    for (std::size_t p = 1; p < pieces; ++p)
      panels.push_back(cuts[i] + len * static_cast<double>(p) / static_cast<double>(pieces));
    panels.push_back(cuts[i + 1]);
  }
  return panels;
}

double l2_loss_vs_target(const PiecewiseLinear& f, const Target& target, double r) {
  const auto panels = loss_panels(f, target, r);
  auto sq = [&](double x) {
    const double e = target.f(x) - f(x);
    return e * e;
  };
  return kernels::panel_integral(sq, panels) / (2.0 * r);
}

double l2_loss_vs_target_serial(const PiecewiseLinear& f, const Target& target,
                                double r) {
  const auto panels = loss_panels(f, target, r);
  auto sq = [&](double x) {
    const double e = target.f(x) - f(x);
    return e * e;
  };
  return kernels::panel_integral_serial(sq, panels) / (2.0 * r);
}

void write_pwl_csv(const PiecewiseLinear& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  auto num = [](double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  out << "x,value\n";
  if (f.is_affine()) {
    out << "0," << num(f(0.0)) << "\n";
  } else {
    for (std::size_t i = 0; i < f.size(); ++i)
      out << num(f.breakpoints()[i]) << "," << num(f.values()[i]) << "\n";
  }
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace f2r
