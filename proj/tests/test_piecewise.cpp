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
#include <fstream>
#include <numbers>

#include "f2r/errors.hpp"
#include "f2r/fourier.hpp"
#include "f2r/kernels.hpp"
#include "f2r/lowerbound.hpp"
#include "f2r/piecewise.hpp"
#include "f2r/waveform.hpp"
#include "helpers.hpp"

using namespace f2r;
using f2r::test::linspace;

TEST_CASE("canonical form") {
  const PiecewiseLinear f({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, 1.0, 1.0);
  CHECK(f.is_affine());
  CHECK(f(5.0) == doctest::Approx(5.0));
  const PiecewiseLinear g({0.0, 1.0, 2.0}, {0.0, 1.0, 1.0}, 0.0, 0.0);
  CHECK(g.size() == 2);
  CHECK_THROWS_AS(PiecewiseLinear({1.0, 0.0}, {0.0, 0.0}, 0.0, 0.0), PreconditionError);
}

TEST_CASE("from_network_1d single relu") {
  const auto f = from_network_1d(test::single_relu());
  REQUIRE(f.size() == 1);
  CHECK(f.breakpoints()[0] == 0.0);
  CHECK(f.left_slope() == 0.0);
  CHECK(f.right_slope() == 1.0);
}

TEST_CASE("from_network_1d waveform layer") {
  for (long long k : {1LL, 2LL, 5LL}) {
    const TriangleParams p{0.4, 2.5, k};
    const auto f = from_network_1d(as_network(waveform_layer(p)));
    const auto g = waveform_pwl(p);
    REQUIRE(f.size() == static_cast<std::size_t>(4 * k + 1));
    REQUIRE(g.size() == f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      CHECK(f.breakpoints()[j] == doctest::Approx(-2.0 * k * p.alpha + j * p.alpha).epsilon(1e-12));
      CHECK(std::abs(f.breakpoints()[j] - g.breakpoints()[j]) <= 1e-12);
    }
  }
}

TEST_CASE("from_network_1d composition of two waveforms") {
  const TriangleParams inner{1.0, 2.0, 2};
  const TriangleParams outer{inner.height() / 6.0, 1.5, 3};
  auto l1 = waveform_layer(inner);
  auto l2 = lift(waveform_relus(outer), l1.readout);
  const ReluNetwork net(1, {l1.layer, l2.layer}, l2.readout);
  const auto f = from_network_1d(net);
  const TriangleParams composed{outer.alpha / inner.beta, outer.beta * inner.beta, 12};
  for (double t : linspace(-6, 6, 10001))
    CHECK(std::abs(f(t) - waveform_eval(t, composed)) <= 1e-9);
  test::check_crossing_bound(net);
}

TEST_CASE("from_network_1d agrees with evaluate on random networks") {
  Rng rng(21);
  for (std::size_t depth = 1; depth <= 3; ++depth) {
    for (std::size_t units : {3u, 20u, 200u}) {
      if (units < depth) continue;
      const auto net = random_network(depth, units, rng);
      const auto f = from_network_1d(net);
      std::cauchy_distribution<double> spread(0.0, 3.0);
      for (int i = 0; i < 10000; ++i) {
        const double t = spread(rng);
        const double v = f(t);
        CHECK(std::abs(net.evaluate(t) - v) <= 1e-9 * (1.0 + std::abs(v)));
      }
    }
  }
}

TEST_CASE("crossing number examples") {
  CHECK(crossing_number(PiecewiseLinear::constant(0.0), 0.5) == 1);
  CHECK(crossing_number(from_network_1d(test::single_relu()), 0.5) == 2);
  for (long long k : {1LL, 3LL, 8LL}) {
    const TriangleParams p{0.5, 2.0, k};
    CHECK(crossing_number(waveform_pwl(p), 0.5) == static_cast<std::size_t>(4 * k + 1));
  }
  // a segment lying on the level belongs to the ">=" side
  const PiecewiseLinear plateau({0.0, 1.0, 2.0, 3.0}, {0.0, 0.5, 0.5, 0.0}, 0.0, 0.0);
  CHECK(crossing_number(plateau, 0.5) == 3);
  // touching the level at a single point
  const PiecewiseLinear touch({0.0, 1.0, 2.0}, {0.0, 0.5, 0.0}, 0.0, 0.0);
  CHECK(crossing_number(touch, 0.5) == 3);
}

TEST_CASE("crossing number is invariant under joint rescaling") {
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    const auto f = from_network_1d(random_network(1 + i % 3, 12, rng));
    for (double c : {0.1, 1.0, 7.0})
      CHECK(crossing_number(f.scaled(c), 0.5 * c) == crossing_number(f, 0.5));
  }
}

TEST_CASE("telgarsky bound") {
  CHECK(telgarsky_bound(1, 1) == 4.0);
  CHECK(telgarsky_bound(4, 2) == 32.0);
}

TEST_CASE("crossing bound on 500 random networks") {
  Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    const std::size_t depth = 1 + static_cast<std::size_t>(i % 3);
    const std::size_t units = depth + static_cast<std::size_t>(uniform01(rng) * 30);
    const auto net = random_network(depth, units, rng);
    test::check_crossing_bound(net);
  }
}

TEST_CASE("l2 loss") {
  SUBCASE("target equal to the function") {
    Rng rng(8);
    const auto f = from_network_1d(random_network(2, 10, rng));
    CHECK(l2_loss_vs_target(f, {[&](double x) { return f(x); }}, 2.0) <= 1e-12);
  }
  SUBCASE("cos against zero") {
    const double v = l2_loss_vs_target(PiecewiseLinear(), {[](double x) { return std::cos(x); },
                                                           2.0 * std::numbers::pi},
                                       std::numbers::pi);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-13));
  }
  SUBCASE("hard instance against zero, Monte Carlo oracle") {
    const auto m = hard_instance(2.0, 1.0, 4);
    const Target t{[&](double x) { return m.target_eval(x); }, m.min_period()};
    const double exact = l2_loss_vs_target(PiecewiseLinear(), t, 1.0);
    const double c0 = m.c_alpha(0.0);
    CHECK(exact == doctest::Approx(3.0 * c0 * c0 / 8.0).epsilon(1e-12));
    const auto mc = kernels::mc_mean(
        [&](Rng& rng) {
          const double v = m.target_eval(2.0 * uniform01(rng) - 1.0);
          return v * v;
        },
        1000000, 17);
    CHECK(std::abs(mc.mean - exact) <= 1e-4 * exact + 4.0 * mc.std_error);
  }
  SUBCASE("rejects r <= 0") {
    CHECK_THROWS_AS(l2_loss_vs_target(PiecewiseLinear(), {[](double) { return 0.0; }}, 0.0),
                    PreconditionError);
  }
}

TEST_CASE("panels respect the target period") {
  const Target t{[](double x) { return std::cos(50.0 * x); }, 2.0 * std::numbers::pi / 50.0};
  const auto cuts = loss_panels(PiecewiseLinear::constant(1.0), t, 1.0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    CHECK(cuts[i + 1] - cuts[i] <= t.min_period / 10.0 + 1e-15);
  CHECK(cuts.front() == -1.0);
  CHECK(cuts.back() == 1.0);
}

TEST_CASE("pwl csv dump") {
  const auto p = test::tmpdir() / "pwl.csv";
  write_pwl_csv(waveform_pwl({1.0, 1.0, 1}), p);
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
}
