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

#include "f2r/synthesizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "f2r/errors.hpp"
#include "f2r/kernels.hpp"
#include "f2r/piecewise.hpp"
#include "f2r/quadrature.hpp"
#include "f2r/relu_sum.hpp"
#include "f2r/sinusoid.hpp"
#include "f2r/waveform.hpp"

namespace f2r {

namespace {

constexpr double kPi = std::numbers::pi;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool close_rel(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw PreconditionError("s must lie in [0, 1]");
}

// Two units: ReLU(x_1 + r + 2) - ReLU(x_1 + r + 1).
ReluNetwork two_unit_constant(double value, std::size_t d, double r) {
  std::vector<double> w(2 * d, 0.0);
  w[0] = 1.0;
  w[d] = 1.0;
  LayerSpec layer(d, std::move(w), {-(r + 2.0), -(r + 1.0)});
  return ReluNetwork(d, {std::move(layer)}, {value, -value});
}

}  // namespace

void SynthesisConfig::validate() const {
  if (depth < 1) throw PreconditionError("config: depth must be >= 1");
  if (!(smoothness >= static_cast<double>(depth)))
    throw PreconditionError("config: depth must not exceed K");
  if (budget < 2) throw PreconditionError("config: budget must be >= 2");
  if (budget < depth) throw PreconditionError("config: budget must be >= depth");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw PreconditionError("config: radius must be positive");
  if (samples && *samples == 0) throw PreconditionError("config: samples must be positive");
  if (retries < 1) throw PreconditionError("config: retries must be >= 1");
}

ReluNetwork shallow_cosine_net(std::span<const double> xi, double theta, double s, double r) {
  check_s(s);
  if (!(r > 0.0)) throw PreconditionError("shallow_cosine_net: r must be positive");
  if (xi.empty()) throw PreconditionError("shallow_cosine_net: empty frequency");
  const double nu = norm(xi);
  if (nu == 0.0) return two_unit_constant(std::cos(theta), xi.size(), r);
  const auto n = static_cast<long long>(std::ceil(nu * r / (2.0 * kPi)));
  std::vector<double> dir(xi.begin(), xi.end());
  for (auto& v : dir) v /= nu;
  const auto layer = lift(gamma_cos_relus(s, nu, n), dir, theta / nu);
  return ReluNetwork(xi.size(), {layer.layer}, layer.readout);
}

std::size_t DeepCosineParams::unit_count() const {
  return (depth - 1) * static_cast<std::size_t>(4 * l + 1) + static_cast<std::size_t>(16 * n + 16);
}

double deep_unit_bound(double nu, double r, std::size_t depth) {
  const double D = static_cast<double>(depth);
  return (8.0 / kPi + 2.0 * D - 2.0) * std::pow(r * nu, 1.0 / D) + 5.0 * D + 27.0;
}

DeepCosineParams deep_cosine_params(double nu, double r, std::size_t depth) {
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw PreconditionError("deep_cosine_net: frequency norm must be positive");
  if (depth < 2) throw PreconditionError("deep_cosine_net: depth must be >= 2");
  if (!(r > 0.0)) throw PreconditionError("deep_cosine_net: r must be positive");
  const double D = static_cast<double>(depth);
  DeepCosineParams p;
  p.norm = nu;
  p.depth = depth;
  p.r = r;
  p.omega = std::pow(nu, 1.0 / D);
  p.n = static_cast<long long>(std::ceil(std::pow(nu * r, 1.0 / D) / (2.0 * kPi)));
  p.beta = std::pow(nu, 1.0 - 1.0 / D);
  p.gamma = std::pow(nu, 1.0 / D);
  p.alpha = (2.0 * static_cast<double>(p.n) + 1.0) * kPi / nu;
  p.l = std::max<long long>(1, static_cast<long long>(std::ceil(std::pow(r * nu, 1.0 / D) / 2.0)));
  const double needed = std::ceil((r + kPi / nu) / (2.0 * p.alpha));
  for (;; ++p.increments) {
    long long k = 1;
    for (std::size_t i = 0; i + 2 < depth; ++i) k *= 2;
    for (std::size_t i = 0; i + 1 < depth; ++i) k *= p.l;
    p.k = k;
    if (static_cast<double>(k) >= needed) break;
    if (p.increments == 3)
      throw ConstructionError("deep_cosine_net: coverage k >= " + std::to_string(needed) +
                              " fails with l = " + std::to_string(p.l) +
                              " (norm " + std::to_string(nu) + ", r " + std::to_string(r) +
                              ", depth " + std::to_string(depth) + ")");
    ++p.l;
  }
  const double two_l = 2.0 * static_cast<double>(p.l);
  p.alphas.resize(depth - 1);
  p.alphas[0] = std::pow(two_l, D - 2.0) * p.alpha;
  for (std::size_t i = 1; i + 1 < depth; ++i) p.alphas[i] = p.alphas[i - 1] * p.gamma / two_l;
  p.within_unit_bound =
      static_cast<double>(p.unit_count()) <= deep_unit_bound(nu, r, depth) * (1.0 + 1e-12);
  return p;
}

bool alpha_chain_consistent(const DeepCosineParams& p) {
  if (p.alphas.size() + 1 != p.depth) return false;
  const double two_l = 2.0 * static_cast<double>(p.l);
  if (!close_rel(p.alphas[0], std::pow(two_l, static_cast<double>(p.depth) - 2.0) * p.alpha))
    return false;
  for (std::size_t i = 0; i + 1 < p.alphas.size(); ++i)
    if (!close_rel(p.alphas[i] * p.gamma, two_l * p.alphas[i + 1])) return false;
  return true;
}

double chain_deviation(const DeepCosineParams& p, std::size_t points) {
  const TriangleParams composed{p.alpha, p.beta, p.k};
  const double lo = -composed.support() - p.alpha;
  const double hi = composed.support() + p.alpha;
  double worst = 0.0;
  for (std::size_t j = 0; j < points; ++j) {
    const double t = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(points - 1);
    double u = t;
    for (double a : p.alphas) u = waveform_eval(u, {a, p.gamma, p.l});
    worst = std::max(worst, std::abs(u - waveform_eval(t, composed)));
  }
  return worst;
}

ReluNetwork build_deep_cosine_net(const DeepCosineParams& p, std::span<const double> direction,
                                  double theta, double s) {
  check_s(s);
  std::vector<LayerSpec> layers;
  layers.reserve(p.depth);
  std::vector<double> prev(direction.begin(), direction.end());
  double bias = theta / p.norm;
  for (double a : p.alphas) {
    auto sl = lift(waveform_relus({a, p.gamma, p.l}), prev, bias);
    layers.push_back(std::move(sl.layer));
    prev = std::move(sl.readout);
    bias = 0.0;
  }
  auto last = lift(gamma_cos_relus(s, p.omega, p.n), prev);
  layers.push_back(std::move(last.layer));
  return ReluNetwork(direction.size(), std::move(layers), std::move(last.readout));
}

ReluNetwork deep_cosine_net(std::span<const double> xi, double theta, double s, double r,
                            std::size_t depth) {
  const double nu = norm(xi);
  const auto p = deep_cosine_params(nu, r, depth);
  std::vector<double> dir(xi.begin(), xi.end());
  for (auto& v : dir) v /= nu;
  return build_deep_cosine_net(p, dir, theta, s);
}

ReluNetwork constant_net(double value, std::size_t input_dim, std::size_t depth) {
  if (depth == 0) throw PreconditionError("constant_net: depth must be >= 1");
  if (depth == 1) return two_unit_constant(value, input_dim, 1.0);
  std::vector<LayerSpec> layers;
  layers.emplace_back(input_dim, std::vector<double>(input_dim, 0.0), std::vector<double>{-1.0});
  for (std::size_t i = 1; i < depth; ++i)
    layers.emplace_back(1, std::vector<double>{1.0}, std::vector<double>{0.0});
  return ReluNetwork(input_dim, std::move(layers), {value});
}

ReluNetwork cosine_subnet(const Frequency& f, double s, double r, std::size_t depth) {
  if (depth == 1) return shallow_cosine_net(f.xi, f.theta, s, r);
  if (norm(f.xi) == 0.0) return constant_net(std::cos(f.theta), f.xi.size(), depth);
  return deep_cosine_net(f.xi, f.theta, s, r, depth);
}

SampleCount choose_sample_count(const FourierMeasure& measure, const SynthesisConfig& cfg) {
  const double D = static_cast<double>(cfg.depth);
  const double K = cfg.smoothness;
  const double e = D / K;
  const double c0 = measure.c_alpha(0.0);
  const double c1k = measure.c_alpha(1.0 / K);
  if (!std::isfinite(c0) || !std::isfinite(c1k) || !(c0 > 0.0))
    throw PreconditionError("choose_sample_count: measure norms must be finite and C^0 > 0");
  SampleCount out;
  out.d0 = 2.0 * (std::pow(8.0 / kPi + 2.0 * D - 2.0, e) * std::pow(cfg.radius, 1.0 / K) * c1k / c0 +
                  std::pow(5.0 * D + 27.0, e));
  const double scaled = std::pow(static_cast<double>(cfg.budget), e);
  out.tiny_budget = scaled <= out.d0;
  out.m = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(scaled / out.d0)));
  return out;
}

double upper_bound(std::size_t depth, double K, std::size_t budget, double r, double c0,
                   double c1k) {
  const double D = static_cast<double>(depth);
  const double e = D / K;
  const double scale = 3.0 * std::pow(kPi, 4) / (4.0 * std::pow(static_cast<double>(budget), e));
  return scale * (std::pow(2.0 * D + 1.0, e) * std::pow(r, 1.0 / K) * c1k * c0 +
                  std::pow(5.0 * D + 27.0, e) * c0 * c0);
}

double upper_bound_a0(std::size_t depth, double K, std::size_t budget, double r, double c0,
                      double c1k) {
  const double D = static_cast<double>(depth);
  const double e = D / K;
  const double a0 = 0.75 * std::pow(kPi, 4) *
                    std::max(std::pow(2.0 * D + 1.0, e), std::pow(5.0 * D + 27.0, e));
  return a0 * std::pow(D / static_cast<double>(budget), e) *
         (std::pow(r, 1.0 / K) * c1k * c0 + c0 * c0);
}

LossEstimate measure_loss(const ReluNetwork& net, const FourierMeasure& measure,
                          const MuSpec& mu) {
  if (!(mu.r > 0.0)) throw PreconditionError("measure_loss: r must be positive");
  if (net.input_dim() != measure.dim())
    throw PreconditionError("measure_loss: network and measure dimensions differ");
  const std::size_t d = measure.dim();
  if (d == 1 && !mu.force_mc) {
    const auto pwl = from_network_1d(net);
    Target target{[&](double x) { return measure.target_eval(x); }, measure.min_period()};
    return {l2_loss_vs_target(pwl, target, mu.r), 0.0, true};
  }
  const double r = mu.r;
  auto draw = [&, x = std::vector<double>(d)](Rng& rng) mutable {
    std::normal_distribution<double> gauss;
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (auto& v : x) {
        v = gauss(rng);
        n2 += v * v;
      }
    } while (n2 == 0.0);
    const double radius = r * std::pow(uniform01(rng), 1.0 / static_cast<double>(d));
    const double scale = radius / std::sqrt(n2);
    for (auto& v : x) v *= scale;
    const double diff = measure.target_eval(x) - net.evaluate(x);
    return diff * diff;
  };
  const auto est = kernels::mc_mean(draw, mu.mc_samples, mu.seed);
  return {est.mean, est.std_error, false};
}

std::string SynthesisReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["depth"] = depth;
  j["K"] = K;
  j["budget"] = budget;
  j["m"] = m;
  j["d0"] = d0;
  j["tiny_budget"] = tiny_budget;
  j["zero_fallback"] = zero_fallback;
  j["unit_count"] = unit_count;
  j["loss"] = loss;
  j["loss_std_error"] = loss_std_error;
  j["bound"] = bound;
  j["bound_a0"] = bound_a0;
  j["c0"] = c0;
  j["c1k"] = c1k;
  auto& arr = j["attempts"] = nlohmann::ordered_json::array();
  for (const auto& a : attempts)
    arr.push_back({{"attempt", a.attempt}, {"units", a.units}, {"accepted", a.accepted},
                   {"loss", a.loss}});
  return j.dump(2);
}

std::pair<ReluNetwork, SynthesisReport> synthesize(const FourierMeasure& measure,
                                                   const SynthesisConfig& cfg) {
  cfg.validate();
  SynthesisReport rep;
  rep.seed = cfg.seed;
  rep.depth = cfg.depth;
  rep.K = cfg.smoothness;
  rep.budget = cfg.budget;
  rep.c0 = measure.c_alpha(0.0);
  rep.c1k = measure.c_alpha(1.0 / cfg.smoothness);
  rep.bound = upper_bound(cfg.depth, cfg.smoothness, cfg.budget, cfg.radius, rep.c0, rep.c1k);
  rep.bound_a0 =
      upper_bound_a0(cfg.depth, cfg.smoothness, cfg.budget, cfg.radius, rep.c0, rep.c1k);
  const auto count = choose_sample_count(measure, cfg);
  rep.d0 = count.d0;
  rep.tiny_budget = count.tiny_budget;
  rep.m = cfg.samples.value_or(count.m);

  const MuSpec mu{cfg.radius, cfg.mc_samples, mix64(cfg.seed ^ 0x5bd1e995ULL), false};
  const std::size_t d = measure.dim();

  auto finish_zero = [&]() {
    rep.zero_fallback = true;
    auto zero = ReluNetwork::zero(d, cfg.depth);
    const auto loss = measure_loss(zero, measure, mu);
    rep.unit_count = zero.unit_count();
    rep.loss = loss.loss;
    rep.loss_std_error = loss.std_error;
    return std::make_pair(std::move(zero), rep);
  };
  if (rep.tiny_budget && !cfg.samples) return finish_zero();

  const std::ptrdiff_t attempts = static_cast<std::ptrdiff_t>(cfg.retries);
  std::vector<ReluNetwork> nets(cfg.retries);
  std::vector<LossEstimate> losses(cfg.retries);
  rep.attempts.resize(cfg.retries);
  const std::size_t m = rep.m;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t a = 0; a < attempts; ++a) {
    Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(a));
    std::vector<ReluNetwork> subnets;
    subnets.reserve(m);
    std::size_t units = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const auto f = measure.sample_nu(rng);
      const double s = uniform01(rng);
      subnets.push_back(cosine_subnet(f, s, cfg.radius, cfg.depth));
      units += subnets.back().unit_count();
    }
    auto& rec = rep.attempts[a];
    rec.attempt = static_cast<std::size_t>(a);
    rec.units = units;
    if (units > cfg.budget) {
      rec.loss = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const std::vector<double> coeffs(m, rep.c0 / static_cast<double>(m));
    nets[a] = parallel_merge(subnets, coeffs);
    losses[a] = measure_loss(nets[a], measure, mu);
    rec.accepted = true;
    rec.loss = losses[a].loss;
  }

  std::ptrdiff_t best = -1;
  for (std::ptrdiff_t a = 0; a < attempts; ++a) {
    if (!rep.attempts[a].accepted) continue;
    if (best < 0 || losses[a].loss < losses[best].loss) best = a;
  }
  if (best < 0) return finish_zero();
  rep.unit_count = nets[best].unit_count();
  rep.loss = losses[best].loss;
  rep.loss_std_error = losses[best].std_error;
  return {std::move(nets[best]), rep};
}

SExpectation::SExpectation(Builder builder) : builder_(std::move(builder)) {
  net0_ = builder_(0.0);
  const auto net1 = builder_(1.0);
  const auto mid = builder_(0.5);
  const std::size_t D = net0_.depth();
  if (net1.depth() != D || mid.depth() != D || net1.input_dim() != net0_.input_dim())
    throw ConstructionError("s-expectation: depth or input dimension depends on s");
  for (std::size_t i = 0; i + 1 < D; ++i)
    if (!(net0_.layer(i) == net1.layer(i)) || !(net0_.layer(i) == mid.layer(i)))
      throw ConstructionError("s-expectation: layer " + std::to_string(i + 1) +
                              " depends on s");
  const auto& l0 = net0_.layer(D - 1);
  const auto& l1 = net1.layer(D - 1);
  const auto& lm = mid.layer(D - 1);
  if (l0.weights() != l1.weights() || l0.weights() != lm.weights())
    throw ConstructionError("s-expectation: last-layer weights depend on s");
  t0_ = l0.thresholds();
  t1_ = l1.thresholds();
  for (std::size_t u = 0; u < t0_.size(); ++u) {
    const double want = 0.5 * (t0_[u] + t1_[u]);
    const double scale = std::max({1.0, std::abs(t0_[u]), std::abs(t1_[u])});
    if (std::abs(lm.threshold(u) - want) > 1e-12 * scale)
      throw ConstructionError("s-expectation: thresholds are not affine in s");
  }
}

double SExpectation::operator()(std::span<const double> x) const {
  const std::size_t D = net0_.depth();
  std::vector<double> h(x.begin(), x.end());
  for (std::size_t i = 0; i + 1 < D; ++i) {
    std::vector<double> next(net0_.layer(i).units());
    net0_.layer(i).apply(h, next);
    h = std::move(next);
  }
  const auto& last = net0_.layer(D - 1);
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t u = 0; u < last.units(); ++u) {
    const double dt = t1_[u] - t0_[u];
    if (dt == 0.0) continue;
    double pre = 0.0;
    const auto row = last.row(u);
    for (std::size_t j = 0; j < row.size(); ++j) pre += row[j] * h[j];
    const double c = (pre - t0_[u]) / dt;
    if (c > 0.0 && c < 1.0) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return quad::integrate_pieces([&](double s) { return builder_(s).evaluate(x); },
                                std::span<const double>(cuts));
}

}  // namespace f2r
