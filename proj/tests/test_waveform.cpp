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

#include "f2r/errors.hpp"
#include "f2r/rng.hpp"
#include "f2r/waveform.hpp"
#include "helpers.hpp"

using namespace f2r;
using f2r::test::linspace;

TEST_CASE("triangle values") {
  const double a = 0.8, b = 1.5;
  CHECK(triangle_eval(a, a, b) == doctest::Approx(a * b));
  CHECK(triangle_eval(-1.0, a, b) == 0.0);
  CHECK(triangle_eval(1.5 * a, a, b) == doctest::Approx(a * b / 2.0));
  CHECK(triangle_eval(2.0 * a + 1e-9, a, b) == 0.0);
}

TEST_CASE("waveform valleys, peaks, reflection") {
  const TriangleParams p{0.7, 1.9, 4};
  for (long long m = -p.k; m <= p.k; ++m)
    CHECK(waveform_eval(2.0 * m * p.alpha, p) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  for (long long m = -p.k; m < p.k; ++m)
    CHECK(waveform_eval((2.0 * m + 1.0) * p.alpha, p) == doctest::Approx(p.height()));
  for (double t : linspace(0.0, p.support(), 1000))
    CHECK(waveform_eval(p.support() - t, p) == doctest::Approx(waveform_eval(t, p)).scale(1.0));
}

TEST_CASE("translation symmetry and range") {
  Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    const TriangleParams p{0.1 + uniform01(rng), 0.2 + 3.0 * uniform01(rng),
                           1 + static_cast<long long>(6 * uniform01(rng))};
    const long long m = -p.k + static_cast<long long>(uniform01(rng) * 2 * p.k);
    const double t = 2.0 * p.alpha * (m + uniform01(rng));
    CHECK(std::abs(waveform_eval(t, p) - triangle_eval(t - 2.0 * m * p.alpha, p.alpha, p.beta)) <=
          1e-12);
    const double u = (uniform01(rng) - 0.5) * 6.0 * p.support();
    const double v = waveform_eval(u, p);
    CHECK(v >= 0.0);
    CHECK(v <= p.height() * (1 + 1e-15));
    if (std::abs(u) > p.support()) CHECK(v == 0.0);
  }
}

TEST_CASE("waveform layer") {
  SUBCASE("k=1") {
    const TriangleParams p{0.6, 1.1, 1};
    const auto l = waveform_layer(p);
    CHECK(l.layer.units() == 5);
    const auto net = as_network(l);
    for (double t : linspace(-3 * p.alpha, 3 * p.alpha, 1001))
      CHECK(std::abs(net.evaluate(t) - waveform_eval(t, p)) <= 1e-10);
  }
  SUBCASE("k=3 max value") {
    const TriangleParams p{0.5, 2.0, 3};
    const auto net = as_network(waveform_layer(p));
    CHECK(net.unit_count() == 13);
    double top = 0.0;
    for (double t : linspace(-4, 4, 8001)) top = std::max(top, net.evaluate(t));
    CHECK(top == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("unit counts") {
    for (long long k = 1; k <= 20; ++k)
      CHECK(waveform_layer({1.0, 1.0, k}).layer.units() == static_cast<std::size_t>(4 * k + 1));
  }
  SUBCASE("rejects bad parameters") {
    CHECK_THROWS_AS(waveform_layer({0.0, 1.0, 1}), PreconditionError);
    CHECK_THROWS_AS(waveform_layer({1.0, 1.0, 0}), PreconditionError);
  }
}

TEST_CASE("composition identity") {
  SUBCASE("alpha=1 beta=2 k=1 with a=1 b=1 l=1") {
    const TriangleParams kp{1.0, 2.0, 1}, lp{1.0, 1.0, 1};
    CHECK(check_composition(kp, lp));
    for (double t : linspace(-3, 3, 301))
      CHECK(waveform_eval(waveform_eval(t, kp), lp) ==
            doctest::Approx(waveform_eval(t, {0.5, 2.0, 2})).scale(1.0));
  }
  SUBCASE("k=2 l=3") {
    const TriangleParams kp{0.75, 4.0, 2};
    const TriangleParams lp{kp.height() / 6.0, 0.9, 3};
    CHECK(check_composition(kp, lp));
    CHECK(composition_deviation(kp, lp) <= 1e-9);
  }
  SUBCASE("precondition") {
    CHECK_THROWS_AS(check_composition({1.0, 2.0, 1}, {1.1, 1.0, 1}), PreconditionError);
  }
}
