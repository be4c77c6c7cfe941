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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "f2r/errors.hpp"
#include "f2r/fourier.hpp"
#include "f2r/piecewise.hpp"
#include "f2r/synthesizer.hpp"
#include "f2r/waveform.hpp"
#include "helpers.hpp"

using namespace f2r;
using f2r::test::linspace;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<double> random_in_ball(std::size_t d, double r, Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<double> x(d);
  double n2 = 0.0;
  for (auto& v : x) {
    v = g(rng);
    n2 += v * v;
  }
  const double scale = r * std::pow(uniform01(rng), 1.0 / d) / std::sqrt(n2);
  for (auto& v : x) v *= scale;
  return x;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("shallow cosine net") {
  SUBCASE("zero frequency") {
    const double xi = 0.0;
    const auto net = shallow_cosine_net({&xi, 1}, 0.0, 0.3, 2.0);
    CHECK(net.unit_count() == 2);
    for (double x : linspace(-3.0, 3.0, 61)) CHECK(net.evaluate(x) == doctest::Approx(1.0));
  }
  SUBCASE("xi=5, r=1") {
    const double xi = 5.0;
    const auto net = shallow_cosine_net({&xi, 1}, 0.0, 0.4, 1.0);
    CHECK(net.unit_count() == 32);
    SExpectation e([&](double s) { return shallow_cosine_net({&xi, 1}, 0.0, s, 1.0); });
    for (double x : linspace(-1, 1, 201)) CHECK(std::abs(e(x) - std::cos(5.0 * x)) <= 1e-8);
    test::check_crossing_bound(net);
  }
  SUBCASE("d=3, |xi|=9, theta=pi/3") {
    Rng rng(12);
    std::vector<double> xi = random_in_ball(3, 1.0, rng);
    const double n = std::sqrt(dot(xi, xi));
    for (auto& v : xi) v *= 9.0 / n;
    const auto net = shallow_cosine_net(xi, kPi / 3, 0.5, 1.0);
    const auto& l = net.layer(0);
    for (std::size_t u = 0; u < l.units(); ++u)
      for (std::size_t j = 0; j < 3; ++j) CHECK(l.weight(u, j) == doctest::Approx(xi[j] / 9.0));
    SExpectation e([&](double s) { return shallow_cosine_net(xi, kPi / 3, s, 1.0); });
    for (int i = 0; i < 50; ++i) {
      const auto x = random_in_ball(3, 1.0, rng);
      CHECK(std::abs(e(x) - std::cos(dot(xi, x) + kPi / 3)) <= 1e-7);
    }
  }
}

TEST_CASE("deep cosine parameters") {
  for (double nu : {3.0, 100.0, 1e3, 1e4, 1e5})
    for (std::size_t D : {2u, 3u, 4u}) {
      const auto p = deep_cosine_params(nu, 1.0, D);
      CHECK(alpha_chain_consistent(p));
      CHECK(p.within_unit_bound);
      CHECK(static_cast<double>(p.k) >= std::ceil((1.0 + kPi / nu) / (2.0 * p.alpha)));
      CHECK(chain_deviation(p, 501) <= 1e-9 * (1.0 + p.alpha * p.beta));
      if (D == 2) CHECK(p.alphas[0] == doctest::Approx((2.0 * p.n + 1.0) * kPi / nu));
    }
  auto p = deep_cosine_params(1e3, 1.0, 3);
  p.alphas[1] *= 1.001;
  CHECK_FALSE(alpha_chain_consistent(p));
  CHECK_THROWS_AS(deep_cosine_params(0.0, 1.0, 2), PreconditionError);
  CHECK_THROWS_AS(deep_cosine_params(1.0, 1.0, 1), PreconditionError);
}

TEST_CASE("small frequency coverage") {
  // r |xi| < 1: the ceilings bite and l may need increments.
  for (double nu : {0.01, 0.3, 0.9})
    for (double r : {0.5, 1.0, 4.0})
      for (std::size_t D : {2u, 3u}) {
        const auto p = deep_cosine_params(nu, r, D);
        CHECK(static_cast<double>(p.k) >= std::ceil((r + kPi / nu) / (2.0 * p.alpha)));
        CHECK(p.increments <= 3);
      }
}

TEST_CASE("deep cosine unbiasedness through the weights") {
  struct Case {
    double xi;
    std::size_t D;
    double theta;
  };
  for (const auto& c : {Case{100.0, 2, 0.0}, Case{1000.0, 3, 0.0}, Case{250.0, 2, -2.5}}) {
    SExpectation e([&](double s) { return deep_cosine_net({&c.xi, 1}, c.theta, s, 1.0, c.D); });
    double worst = 0.0;
    for (double x : linspace(-1, 1, 2001))
      worst = std::max(worst, std::abs(e(x) - std::cos(c.xi * x + c.theta)));
    CHECK(worst <= 1e-7);
  }
}

TEST_CASE("deep cosine in higher dimension") {
  Rng rng(31);
  std::vector<double> xi = random_in_ball(2, 1.0, rng);
  const double n = std::sqrt(dot(xi, xi));
  for (auto& v : xi) v *= 400.0 / n;
  SExpectation e([&](double s) { return deep_cosine_net(xi, 1.0, s, 1.0, 2); });
  for (int i = 0; i < 50; ++i) {
    const auto x = random_in_ball(2, 1.0, rng);
    CHECK(std::abs(e(x) - std::cos(dot(xi, x) + 1.0)) <= 1e-7);
  }
}

TEST_CASE("deep nets use far fewer units") {
  const double xi = 1e4;
  const auto shallow = shallow_cosine_net({&xi, 1}, 0.0, 0.5, 1.0);
  const auto deep = deep_cosine_net({&xi, 1}, 0.0, 0.5, 1.0, 2);
  CHECK(static_cast<double>(deep.unit_count()) < 0.1 * static_cast<double>(shallow.unit_count()));
  test::check_crossing_bound(deep);
}

TEST_CASE("constant subnets") {
  for (std::size_t D : {1u, 2u, 4u}) {
    const auto net = constant_net(-0.25, 2, D);
    CHECK(net.depth() == D);
    const std::vector<double> x{0.3, -0.9};
    CHECK(net.evaluate(x) == doctest::Approx(-0.25));
  }
  const Frequency zero{{0.0}, 1.0};
  const auto net = cosine_subnet(zero, 0.5, 1.0, 3);
  CHECK(net.unit_count() == 3);
  CHECK(net.evaluate(0.7) == doctest::Approx(std::cos(1.0)));
}

TEST_CASE("sample count") {
  const auto m = hard_instance(2, 1, 16);
  SynthesisConfig cfg;
  cfg.depth = 2;
  cfg.smoothness = 2.0;
  cfg.budget = 4000;
  const auto sc = choose_sample_count(m, cfg);
  const double c0 = std::pow(32 * kPi, -0.25);
  const double c1 = 0.5 * std::pow(32 * kPi, 0.25);
  const double d0 = 2.0 * ((8 / kPi + 2) * c1 / c0 + 37.0);
  CHECK(sc.d0 == doctest::Approx(d0).epsilon(1e-12));
  CHECK(sc.m == static_cast<std::size_t>(std::floor(4000.0 / d0)));
  CHECK_FALSE(sc.tiny_budget);
  cfg.budget = 8000;
  const auto sc2 = choose_sample_count(m, cfg);
  CHECK(std::abs(static_cast<double>(sc2.m) - 2.0 * sc.m) <= 1.0);
  cfg.budget = 20;
  const auto tiny = choose_sample_count(m, cfg);
  CHECK(tiny.m == 1);
  CHECK(tiny.tiny_budget);
}

TEST_CASE("measure loss") {
  const auto m = hard_instance(2, 1, 4);
  const double c0 = m.c_alpha(0);
  SUBCASE("zero network") {
    const auto l = measure_loss(ReluNetwork::zero(1, 2), m, {1.0});
    CHECK(l.exact);
    CHECK(l.loss == doctest::Approx(3.0 * c0 * c0 / 8.0).epsilon(1e-12));
  }
  SUBCASE("exact constant") {
    const auto c = FourierMeasure::from_atoms(1, {{{0.0}, 0.6, 0.0}});
    CHECK(measure_loss(constant_net(0.6, 1, 1), c, {1.0}).loss <= 1e-12);
    CHECK(measure_loss(constant_net(0.6, 1, 3), c, {2.0}).loss <= 1e-12);
  }
  SUBCASE("Monte Carlo self-consistency in d=2") {
    const auto g = gaussian_measure(2);
    const std::vector<double> xi{3.0, -1.0};
    const auto net = shallow_cosine_net(xi, 0.0, 0.6, 1.0);
    const auto a = measure_loss(net, g, {1.0, 20000, 1});
    const auto b = measure_loss(net, g, {1.0, 20000, 2});
    CHECK_FALSE(a.exact);
    CHECK(std::abs(a.loss - b.loss) <= 6.0 * std::hypot(a.std_error, b.std_error));
  }
}

TEST_CASE("synthesize") {
  SUBCASE("constant target") {
    const auto c = FourierMeasure::from_atoms(1, {{{0.0}, 0.9, 0.0}});
    SynthesisConfig cfg;
    cfg.budget = 2000;
    cfg.smoothness = 2.0;
    for (std::size_t D : {1u, 2u}) {
      cfg.depth = D;
      const auto [net, rep] = synthesize(c, cfg);
      CHECK_FALSE(rep.zero_fallback);
      CHECK(rep.loss <= 1e-12);
      for (double x : linspace(-1, 1, 21)) CHECK(net.evaluate(x) == doctest::Approx(0.9));
    }
  }
  SUBCASE("hard instance within the bound") {
    const auto m = hard_instance(2, 1, 8);
    SynthesisConfig cfg;
    cfg.depth = 2;
    cfg.smoothness = 2.0;
    cfg.budget = 3000;
    cfg.seed = 4;
    const auto [net, rep] = synthesize(m, cfg);
    CHECK(net.unit_count() <= cfg.budget);
    CHECK(rep.loss <= rep.bound);
    CHECK(rep.loss <= rep.bound_a0);
    CHECK(rep.bound <= rep.bound_a0);
    CHECK(rep.attempts.size() == 8);
    test::check_crossing_bound(net, 0.5 / std::pow(16 * kPi, 0.25));
  }
  SUBCASE("tiny budget") {
    const auto m = hard_instance(2, 1, 8);
    SynthesisConfig cfg;
    cfg.budget = 2;
    cfg.smoothness = 2.0;
    const auto [net, rep] = synthesize(m, cfg);
    CHECK(rep.zero_fallback);
    CHECK(net == ReluNetwork::zero(1, 1));
    const double c0 = m.c_alpha(0);
    CHECK(rep.loss <= 1.5 * c0 * c0);
  }
  SUBCASE("budget and determinism") {
    const auto m = hard_instance(1, 1, 4);
    Rng rng(6);
    for (int i = 0; i < 6; ++i) {
      SynthesisConfig cfg;
      cfg.budget = 64 + static_cast<std::size_t>(uniform01(rng) * 500);
      cfg.samples = 1 + i;
      cfg.seed = rng();
      const auto a = synthesize(m, cfg);
      const auto b = synthesize(m, cfg);
      CHECK(a.first.unit_count() <= cfg.budget);
      CHECK(serialize(a.first) == serialize(b.first));
      test::check_crossing_bound(a.first);
    }
  }
  SUBCASE("invalid config") {
    SynthesisConfig cfg;
    cfg.depth = 3;
    cfg.smoothness = 2.0;
    CHECK_THROWS_AS(synthesize(hard_instance(2, 1, 2), cfg), PreconditionError);
    cfg.depth = 1;
    cfg.budget = 1;
    CHECK_THROWS_AS(synthesize(hard_instance(2, 1, 2), cfg), PreconditionError);
  }
}

TEST_CASE("report json") {
  SynthesisConfig cfg;
  cfg.budget = 500;
  cfg.seed = 42;
  const auto rep = synthesize(hard_instance(1, 1, 2), cfg).second;
  const auto text = rep.to_json();
  for (const char* key : {"\"seed\"", "\"attempts\"", "\"m\"", "\"unit_count\"", "\"loss\"",
                          "\"bound\"", "\"depth\"", "\"K\""})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("s-expectation rejects families with s-dependent inner layers") {
  const auto bad = [](double s) {
    return ReluNetwork(1, {LayerSpec(1, {1.0}, {s}), LayerSpec(1, {1.0}, {0.0})}, {1.0});
  };
  CHECK_THROWS_AS(SExpectation{bad}, ConstructionError);
}
