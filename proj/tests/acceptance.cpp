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

// End-to-end acceptance checks. One PASS/FAIL line per criterion; the exit
// status is nonzero if any criterion fails.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "f2r/fourier.hpp"
#include "f2r/harness.hpp"
#include "f2r/lowerbound.hpp"
#include "f2r/piecewise.hpp"
#include "f2r/relu_net.hpp"
#include "f2r/rng.hpp"
#include "f2r/sinusoid.hpp"
#include "f2r/synthesizer.hpp"
#include "f2r/waveform.hpp"

using namespace f2r;

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances and limits.
constexpr double kCompositionTol = 1e-9;
constexpr double kCompositionSeconds = 1.0;
constexpr double kOracleTol = 1e-8;
constexpr double kOracleSeconds = 5.0;
constexpr double kDeepTol = 1e-7;
constexpr double kDeepSeconds = 60.0;
constexpr double kSlopeTol = 0.2;
constexpr double kSweepSeconds = 600.0;
constexpr double kTowerRatio = 0.05;
constexpr double kCrossingSeconds = 120.0;
constexpr double kFloorSlack = 1e-10;
constexpr double kFloorSeconds = 300.0;
constexpr double kNormTol = 1e-12;
constexpr double kGaussTol = 1e-8;
constexpr double kGaussSeconds = 30.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<double> grid(double a, double b, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Triangle waveform written out directly: a 2k-tooth saw of slope beta on
// [-2k alpha, 2k alpha], zero elsewhere.
double tent(double t, double alpha, double beta, long long k) {
  const double half = 2.0 * static_cast<double>(k) * alpha;
  if (t <= -half || t >= half) return 0.0;
  const double u = std::fmod(t + half, 2.0 * alpha);
  return beta * (alpha - std::abs(u - alpha));
}

Outcome composition() {
  Rng rng(101);
  Outcome o;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const long long k = 1 + static_cast<long long>(uniform01(rng) * 8);
    const long long l = 1 + static_cast<long long>(uniform01(rng) * 8);
    const double alpha = 0.1 + 1.9 * uniform01(rng);
    const double beta = 0.5 + 3.5 * uniform01(rng);
    const double a = alpha * beta / (2.0 * static_cast<double>(l));
    const double b = 0.5 + 2.5 * uniform01(rng);
    const TriangleParams inner{alpha, beta, k}, outer{a, b, l};
    const double lib = composition_deviation(inner, outer, 10000);
    double direct = 0.0;
    const double lo = -inner.support() - 1.0, hi = inner.support() + 1.0;
    for (double t : grid(lo, hi, 10000)) {
      const double lhs = tent(tent(t, alpha, beta, k), a, b, l);
      const double rhs = tent(t, a / beta, b * beta, 2 * k * l);
      direct = std::max(direct, std::abs(lhs - rhs));
    }
    worst = std::max({worst, lib, direct});
  }
  o.pass = worst <= kCompositionTol;
  o.detail = "max deviation " + fmt("%.3g", worst);
  return o;
}

Outcome sinusoid_oracle() {
  Outcome o;
  double worst = 0.0;
  for (auto [w, n] : {std::pair{1.0, 0LL}, {5.0, 2LL}, {40.0, 7LL}}) {
    const double R = validity_radius(w, n);
    for (double t : grid(-R, R, 2001))
      worst = std::max(worst, std::abs(expectation_oracle(t, w, n) - std::cos(w * t)));
  }
  o.pass = worst <= kOracleTol;
  o.detail = "sup error " + fmt("%.3g", worst);
  return o;
}

Outcome deep_unbiased() {
  Outcome o;
  Rng rng(303);
  double worst = 0.0;
  for (std::size_t D : {2u, 3u})
    for (double xi : {1e2, 1e3, 1e4}) {
      const double theta = kPi * (2.0 * uniform01(rng) - 1.0);
      SExpectation e([&](double s) { return deep_cosine_net({&xi, 1}, theta, s, 1.0, D); });
      for (double x : grid(-1.0, 1.0, 2001))
        worst = std::max(worst, std::abs(e(x) - std::cos(xi * x + theta)));
    }
  o.pass = worst <= kDeepTol;
  o.detail = "sup error " + fmt("%.3g", worst);
  return o;
}

Outcome unit_counts() {
  Outcome o;
  int bad = 0;
  for (long long k = 1; k <= 64; ++k)
    if (waveform_layer({0.3, 1.7, k}).layer.units() != static_cast<std::size_t>(4 * k + 1)) ++bad;
  for (long long n = 0; n <= 64; ++n)
    if (gamma_cos_layer(0.37, 3.0, n).layer.units() != static_cast<std::size_t>(16 * n + 16))
      ++bad;
  Rng rng(404);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 1 + static_cast<std::size_t>(uniform01(rng) * 4);
    const std::size_t D = 2 + static_cast<std::size_t>(uniform01(rng) * 3);
    const double norm = std::pow(10.0, 6.0 * uniform01(rng));
    const double r = 0.5 + 2.0 * uniform01(rng);
    std::vector<double> xi(d);
    double nn = 0.0;
    for (auto& v : xi) {
      v = 2.0 * uniform01(rng) - 1.0;
      nn += v * v;
    }
    for (auto& v : xi) v *= norm / std::sqrt(nn);
    const auto net = deep_cosine_net(xi, 0.0, uniform01(rng), r, D);
    const double Dd = static_cast<double>(D);
    const double bound = (8.0 / kPi + 2.0 * Dd - 2.0) * std::pow(r * norm, 1.0 / Dd) + 5.0 * Dd + 27.0;
    if (static_cast<double>(net.unit_count()) > bound) ++bad;
  }
  o.pass = bad == 0;
  o.detail = std::to_string(bad) + " mismatches";
  return o;
}

Outcome rate_sweep() {
  Outcome o;
  const auto cfg = parse_config(R"({
    "measure": {"family": "hard_instance", "K": 2, "r": 1, "L": 64},
    "depths": [1, 2], "budgets": {"geometric": [64, 4096]},
    "K": 2, "r": 1, "repeats": 8, "seed": 1, "samples": "auto"})",
                                Command::Sweep);
  const auto res = run_sweep(cfg);
  std::ostringstream d;
  int over = 0;
  for (const auto& rec : res.records)
    if (!(rec.loss <= rec.upper_bound)) ++over;
  d << over << " records over bound";
  bool slopes_ok = true;
  for (std::size_t D : {1u, 2u}) {
    const auto s = fit_slope(res.records, D);
    const double want = -static_cast<double>(D) / 2.0;
    d << "; slope D=" << D << " ";
    if (s.slope) {
      d << fmt("%.3f", *s.slope) << " (want " << want << ")";
      slopes_ok = slopes_ok && std::abs(*s.slope - want) <= kSlopeTol;
    } else {
      d << "skipped";
      slopes_ok = false;
    }
  }
  auto loss_at = [&](std::size_t D, std::size_t N) {
    for (const auto& r : res.records)
      if (r.depth == D && r.budget == N) return r.loss;
    return std::nan("");
  };
  bool deeper_wins = true;
  for (std::size_t N : {2048u, 4096u}) {
    const double l1 = loss_at(1, N), l2 = loss_at(2, N);
    d << "; N=" << N << " D1 " << fmt("%.3g", l1) << " D2 " << fmt("%.3g", l2);
    deeper_wins = deeper_wins && l2 < l1;
  }
  o.pass = over == 0 && slopes_ok && deeper_wins;
  o.detail = d.str();
  return o;
}

Outcome crossing() {
  Outcome o;
  Rng rng(606);
  std::size_t nets = 0, violations = 0;
  double tower_ratio = 0.0;
  for (auto [D, N0] : {std::pair<std::size_t, std::size_t>{1, 8}, {2, 20}, {3, 51}, {4, 40},
                       {2, 200}}) {
    const auto rep = crossing_bound_sweep(D, N0, 100, rng);
    nets += rep.trials.size();
    violations += rep.violations;
    if (D == 3) tower_ratio = rep.max_adversarial_ratio;
  }
  // D=3 tower with l=4: (4l)^D + 1 intervals
  const auto tower = triangle_tower(3, 4);
  const auto cr = crossing_number(from_network_1d(tower), 0.5);
  const bool tower_exact = cr == 16 * 16 * 16 + 1;
  o.pass = violations == 0 && tower_ratio >= kTowerRatio && tower_exact;
  o.detail = std::to_string(nets) + " nets, " + std::to_string(violations) +
             " violations, tower ratio " + fmt("%.4f", tower_ratio) + ", tower Cr " +
             std::to_string(cr);
  return o;
}

Outcome lemma5() {
  Outcome o;
  Rng rng(707);
  std::size_t checked = 0, below = 0;
  double zero_err = 0.0;
  for (long long L : {2LL, 8LL, 32LL})
    for (double K : {1.0, 2.0, 4.0}) {
      const auto measure = hard_instance(K, 1.0, L);
      const double w = 2.0 * kPi * static_cast<double>(L);
      std::vector<ReluNetwork> nets;
      nets.push_back(ReluNetwork::zero(1, 1));
      for (std::size_t D : {1u, 2u, 3u})
        for (std::size_t N : {256u, 2048u}) {
          if (static_cast<double>(D) > K || (D == 3 && N == 256)) continue;
          SynthesisConfig sc;
          sc.depth = D;
          sc.budget = N;
          sc.smoothness = K;
          sc.seed = rng();
          nets.push_back(synthesize(measure, sc).first);
        }
      const double xi = w, other = 1.0 + 300.0 * uniform01(rng);
      nets.push_back(shallow_cosine_net({&xi, 1}, 0.0, uniform01(rng), 1.0));
      nets.push_back(shallow_cosine_net({&other, 1}, 1.0, uniform01(rng), 1.0));
      nets.push_back(deep_cosine_net({&xi, 1}, 0.0, uniform01(rng), 1.0, 2));
      for (std::size_t D : {1u, 2u, 3u, 4u}) nets.push_back(random_network(D, 6 * D, rng));
      for (const auto& net : nets) {
        const auto rep = verify_lemma5(net, K, 1.0, L);
        ++checked;
        if (!(rep.measured_loss >= rep.lemma5_floor - kFloorSlack)) ++below;
      }
      // zero network: mean of f^2 over whole periods is 3 / (8 w^(2 alpha))
      const double zl = verify_lemma5(nets.front(), K, 1.0, L).measured_loss;
      const double want = 3.0 / (8.0 * std::pow(w, 1.0 / K));
      zero_err = std::max(zero_err, std::abs(zl - want) / want);
    }
  o.pass = checked >= 100 && below == 0 && zero_err <= 1e-10;
  o.detail = std::to_string(checked) + " nets, " + std::to_string(below) +
             " below floor, zero-net loss error " + fmt("%.2g", zero_err);
  return o;
}

Outcome norm_identities() {
  Outcome o;
  double worst = 0.0;
  bool band = true;
  for (double K : {1.0, 2.0, 4.0})
    for (double r : {0.5, 1.0, 3.0})
      for (long long L : {1LL, 2LL, 8LL, 32LL, 64LL}) {
        const auto m = hard_instance(K, r, L);
        const double w = 2.0 * kPi * static_cast<double>(L);
        const double a = 1.0 / (2.0 * K);
        const double c0 = m.c_alpha(0.0), c1 = m.c_alpha(1.0 / K);
        const double e0 = std::pow(w, -a);
        const double e1 = 0.5 * std::pow(r, -1.0 / K) * std::pow(w, 1.0 / K - a);
        worst = std::max({worst, std::abs(c0 - e0) / e0, std::abs(c1 - e1) / e1});
        const double combo = c0 * c1 * std::pow(r, 1.0 / K) + c0 * c0;
        band = band && combo >= 0.5 && combo <= 1.5;
      }
  o.pass = worst <= kNormTol && band;
  o.detail = "max relative error " + fmt("%.2g", worst) + (band ? ", band ok" : ", band violated");
  return o;
}

Outcome gaussian_scaling() {
  Outcome o;
  double worst = 0.0, lo = 1e300, hi = 0.0;
  for (std::size_t d = 1; d <= 32; ++d) {
    const auto m = gaussian_measure(d);
    const double dd = static_cast<double>(d);
    // radius of a standard normal vector: E|xi|^a = 2^(a/2) G((d+a)/2) / G(d/2)
    auto moment = [&](double a) {
      return std::exp(0.5 * a * std::log(2.0) + std::lgamma(0.5 * (dd + a)) - std::lgamma(0.5 * dd));
    };
    for (double K : {1.0, 2.0, 4.0}) {
      const double c0 = m.c_alpha_numeric(0.0), c1 = m.c_alpha_numeric(1.0 / K);
      worst = std::max({worst, std::abs(c0 - 1.0), std::abs(c1 - moment(1.0 / K)) / moment(1.0 / K)});
      const double ratio = c0 * (c1 + c0) / (std::pow(dd, 1.0 / (2.0 * K)) + 1.0);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  o.pass = worst <= kGaussTol && lo >= 0.5 && hi <= 2.0;
  o.detail = "norm error " + fmt("%.2g", worst) + ", ratio in [" + fmt("%.4f", lo) + ", " +
             fmt("%.4f", hi) + "]";
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto hard = parse_config(R"({
    "measure": {"family": "hard_instance", "K": 1, "r": 1, "L": 8},
    "depths": [1, 2, 3], "budgets": {"geometric": [64, 512]}, "K": 3, "seed": 9})",
                                 Command::Sweep);
  const auto gauss = parse_config(R"({
    "measure": {"family": "gaussian", "d": 2}, "depths": [1, 2],
    "budgets": [128, 512], "K": 2, "r": 1, "seed": 4, "mc_samples": 4000})",
                                  Command::Sweep);
  bool same = true;
  for (const auto* cfg : {&hard, &gauss}) {
    const auto first = csv_text(run_sweep(*cfg).records);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(3);
    const auto second = csv_text(run_sweep(*cfg).records);
    omp_set_num_threads(saved);
    const auto third = csv_text(run_sweep(*cfg).records);
    same = same && first == second && first == third;
  }
  o.pass = same;
  o.detail = same ? "csv identical across runs and thread counts" : "csv differs";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double seconds;  // 0: no limit
  };
  const std::vector<Criterion> criteria{
      {1, "composition identity", composition, kCompositionSeconds},
      {2, "sinusoid unbiasedness", sinusoid_oracle, kOracleSeconds},
      {3, "deep cosine unbiasedness", deep_unbiased, kDeepSeconds},
      {4, "unit counts", unit_counts, 0.0},
      {5, "upper bound rate sweep", rate_sweep, kSweepSeconds},
      {6, "crossing bound", crossing, kCrossingSeconds},
      {7, "oscillation loss floor", lemma5, kFloorSeconds},
      {8, "hard instance norms", norm_identities, 0.0},
      {9, "gaussian norm scaling", gaussian_scaling, kGaussSeconds},
      {10, "sweep determinism", determinism, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.seconds > 0.0 && secs > c.seconds) {
      o.pass = false;
      o.detail += "; over time limit " + fmt("%.0f", c.seconds) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2d %-26s %s  %.2f s  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
