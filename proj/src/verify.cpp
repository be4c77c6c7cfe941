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

#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>

#include "f2r/errors.hpp"
#include "f2r/harness.hpp"
#include "f2r/lowerbound.hpp"
#include "f2r/piecewise.hpp"
#include "f2r/relu_sum.hpp"
#include "f2r/sinusoid.hpp"
#include "f2r/synthesizer.hpp"
#include "f2r/waveform.hpp"

namespace f2r {

namespace {

constexpr double kPi = std::numbers::pi;

class Suite {
 public:
  explicit Suite(std::vector<VerifyEntry>& out) : out_(out) {}

  // `check` returns an empty string on success, else a failure detail.
  void run(const std::string& module, const std::string& invariant, const std::string& inputs,
           const std::function<std::string()>& check) {
    VerifyEntry e{module, invariant, false, inputs, {}};
    try {
      e.detail = check();
      e.passed = e.detail.empty();
    } catch (const std::exception& ex) {
      e.detail = std::string("exception: ") + ex.what();
    }
    out_.push_back(std::move(e));
  }

 private:
  std::vector<VerifyEntry>& out_;
};

std::string fail_if(bool bad, const std::string& what) { return bad ? what : std::string(); }

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

void relu_net_suite(Suite& s, Rng& rng, const VerifyOptions& opts) {
  s.run("relu_net", "merge-linearity", "3 random depth-2 nets, 50 points", [&] {
    std::vector<ReluNetwork> nets;
    for (int i = 0; i < 3; ++i) nets.push_back(random_network(2, 6, rng));
    const std::vector<double> c{0.5, -1.25, 2.0};
    const auto merged = parallel_merge(nets, c);
    std::size_t units = 0;
    for (const auto& n : nets) units += n.unit_count();
    if (merged.unit_count() != units) return std::string("unit count not additive");
    for (int k = 0; k < 50; ++k) {
      const double x = -5.0 + 10.0 * uniform01(rng);
      double want = 0.0, scale = 1.0;
      for (int i = 0; i < 3; ++i) {
        const double v = c[i] * nets[i].evaluate(x);
        want += v;
        scale += std::abs(v);
      }
      if (std::abs(merged.evaluate(x) - want) > 1e-10 * scale)
        return "mismatch at x=" + num(x);
    }
    return std::string();
  });
  s.run("relu_net", "serialize-roundtrip", "random depth-3 net", [&] {
    const auto net = random_network(3, 12, rng);
    return fail_if(!(deserialize(serialize(net)) == net), "round trip changed the network");
  });
  if (opts.network_file) {
    s.run("relu_net", "network-file", opts.network_file->string(), [&] {
      const auto net = load_network(*opts.network_file);
      if (net.input_dim() != 1) return std::string();
      const auto pwl = from_network_1d(net);
      for (int k = 0; k <= 200; ++k) {
        const double x = -4.0 + 0.04 * k;
        const double a = net.evaluate(x);
        if (std::abs(pwl(x) - a) > 1e-8 * (1.0 + std::abs(a)))
          return "piecewise form disagrees at x=" + num(x);
      }
      return std::string();
    });
  }
}

void piecewise_suite(Suite& s, Rng& rng) {
  s.run("piecewise", "exact-form-matches-evaluate", "random nets, depth 1..3", [&] {
    for (std::size_t depth = 1; depth <= 3; ++depth) {
      const auto net = random_network(depth, 4 * depth + 2, rng);
      const auto pwl = from_network_1d(net);
      for (int k = 0; k <= 400; ++k) {
        const double x = -10.0 + 0.05 * k;
        const double a = net.evaluate(x);
        if (std::abs(pwl(x) - a) > 1e-9 * (1.0 + std::abs(a)))
          return "depth " + std::to_string(depth) + " mismatch at x=" + num(x);
      }
    }
    return std::string();
  });
  s.run("piecewise", "crossing-scale-invariance", "random nets, c in {0.5, 3}", [&] {
    for (int i = 0; i < 10; ++i) {
      const auto f = from_network_1d(random_network(2, 8, rng));
      for (double c : {0.5, 3.0})
        if (crossing_number(f.scaled(c), 0.5 * c) != crossing_number(f, 0.5))
          return std::string("crossing number changed under scaling");
    }
    return std::string();
  });
}

void waveform_suite(Suite& s, Rng& rng) {
  s.run("waveform", "unit-count", "k in 1..10", [&] {
    for (long long k = 1; k <= 10; ++k)
      if (waveform_layer({0.3, 2.0, k}).layer.units() != static_cast<std::size_t>(4 * k + 1))
        return "wrong unit count for k=" + std::to_string(k);
    return std::string();
  });
  s.run("waveform", "layer-matches-definition", "alpha=0.7 beta=1.3 k=3", [&] {
    const TriangleParams p{0.7, 1.3, 3};
    const auto net = as_network(waveform_layer(p));
    for (int i = 0; i <= 1000; ++i) {
      const double t = -10.0 + 0.02 * i;
      if (std::abs(net.evaluate(t) - waveform_eval(t, p)) > 1e-12)
        return "mismatch at t=" + num(t);
    }
    return std::string();
  });
  s.run("waveform", "composition-identity", "5 random parameter sets", [&] {
    for (int i = 0; i < 5; ++i) {
      const TriangleParams inner{0.1 + uniform01(rng), 0.5 + 2.0 * uniform01(rng),
                                 1 + static_cast<long long>(4 * uniform01(rng))};
      const long long l = 1 + static_cast<long long>(3 * uniform01(rng));
      const TriangleParams outer{inner.height() / (2.0 * static_cast<double>(l)),
                                 0.5 + uniform01(rng), l};
      if (!check_composition(inner, outer))
        return "deviation " + num(composition_deviation(inner, outer));
    }
    return std::string();
  });
}

void sinusoid_suite(Suite& s, Rng& rng) {
  for (auto [w, n] : {std::pair{1.0, 0LL}, {5.0, 2LL}, {40.0, 7LL}}) {
    s.run("sinusoid", "unbiased-on-window", "omega=" + num(w) + " n=" + std::to_string(n), [&] {
      const double R = validity_radius(w, n);
      for (int i = 0; i <= 400; ++i) {
        const double t = -R + 2.0 * R * i / 400.0;
        const double e = expectation_oracle(t, w, n) - std::cos(w * t);
        if (std::abs(e) > 1e-8) return "error " + num(e) + " at t=" + num(t);
      }
      return std::string();
    });
  }
  s.run("sinusoid", "almost-sure-bound", "1e4 random (t, s), omega=3, n=2", [&] {
    for (int i = 0; i < 10000; ++i) {
      const double t = -8.0 + 16.0 * uniform01(rng);
      const double sv = uniform01(rng);
      if (std::abs(gamma_cos_eval(t, sv, 3.0, 2)) > kPi * kPi / 4.0 + 1e-12)
        return "bound exceeded at t=" + num(t) + " s=" + num(sv);
    }
    return std::string();
  });
  s.run("sinusoid", "unit-count", "n in 0..10", [&] {
    for (long long n = 0; n <= 10; ++n)
      if (gamma_cos_layer(0.3, 2.0, n).layer.units() != static_cast<std::size_t>(16 * n + 16))
        return "wrong unit count for n=" + std::to_string(n);
    return std::string();
  });
}

void fourier_suite(Suite& s) {
  s.run("fourier", "hard-instance-norms", "K in {1,2,4}, r in {0.5,1,3}, L in {1,8}", [&] {
    for (double K : {1.0, 2.0, 4.0})
      for (double r : {0.5, 1.0, 3.0})
        for (long long L : {1LL, 8LL}) {
          const auto m = hard_instance(K, r, L);
          const double w = 2.0 * kPi * static_cast<double>(L);
          const double a = 1.0 / (2.0 * K);
          const double c0 = m.c_alpha(0.0);
          const double c1 = m.c_alpha(1.0 / K);
          if (std::abs(c0 - std::pow(w, -a)) > 1e-12 * c0) return std::string("C^0 mismatch");
          const double want = 0.5 * std::pow(r, -1.0 / K) * std::pow(w, 1.0 / K - a);
          if (std::abs(c1 - want) > 1e-12 * want) return std::string("C^(1/K) mismatch");
          const double combo = c0 * c1 * std::pow(r, 1.0 / K) + c0 * c0;
          if (combo < 0.5 || combo > 1.5) return "norm combination " + num(combo);
        }
    return std::string();
  });
  s.run("fourier", "gaussian-closed-vs-numeric", "d in {1,3,8}, alpha in {0,0.5,1}", [&] {
    for (std::size_t d : {1u, 3u, 8u}) {
      const auto m = gaussian_measure(d);
      for (double a : {0.0, 0.5, 1.0}) {
        const double c = m.c_alpha(a);
        const double q = m.c_alpha_numeric(a);
        if (std::abs(c - q) > 1e-8 * c)
          return "d=" + std::to_string(d) + " alpha=" + num(a) + ": " + num(c) + " vs " + num(q);
      }
    }
    return std::string();
  });
  s.run("fourier", "class-embedding", "hard instances and gaussians, D > K", [&] {
    std::vector<FourierMeasure> ms{hard_instance(2.0, 1.0, 8), hard_instance(1.0, 0.5, 2),
                                   gaussian_measure(4), scaled_cosine(20.0, 0.5)};
    for (const auto& m : ms)
      for (double K : {1.0, 2.0})
        for (double D : {K + 1.0, K + 3.0})
          if (m.c_alpha(1.0 / D) + m.c_alpha(0.0) >
              2.0 * (m.c_alpha(1.0 / K) + m.c_alpha(0.0)) * (1.0 + 1e-12))
            return "violated for " + m.name();
    return std::string();
  });
}

void synthesizer_suite(Suite& s, Rng& rng, const VerifyOptions& opts) {
  s.run("synthesizer", "shallow-unbiased", "xi=5, theta=0.4, r=1, 21 points", [&] {
    const double xi = 5.0;
    SExpectation e([&](double sv) { return shallow_cosine_net({&xi, 1}, 0.4, sv, 1.0); });
    for (int i = 0; i <= 20; ++i) {
      const double x = -1.0 + 0.1 * i;
      if (std::abs(e(x) - std::cos(xi * x + 0.4)) > 1e-7) return "error at x=" + num(x);
    }
    return std::string();
  });
  s.run("synthesizer", "deep-unbiased", "xi=300, theta=-1, r=1, D=2, 21 points", [&] {
    const double xi = 300.0;
    SExpectation e([&](double sv) { return deep_cosine_net({&xi, 1}, -1.0, sv, 1.0, 2); });
    for (int i = 0; i <= 20; ++i) {
      const double x = -1.0 + 0.1 * i;
      if (std::abs(e(x) - std::cos(xi * x - 1.0)) > 1e-7) return "error at x=" + num(x);
    }
    return std::string();
  });
  const std::string chain_inputs =
      std::string("norm=1000, r=1, D=3") + (opts.corrupt_alpha_chain ? " (corrupted)" : "");
  s.run("synthesizer", "composition-parameter-consistency", chain_inputs, [&] {
    auto p = deep_cosine_params(1000.0, 1.0, 3);
    if (opts.corrupt_alpha_chain) p.alphas[1] *= 1.01;
    if (!alpha_chain_consistent(p)) return std::string("alpha_i gamma != 2 alpha_{i+1} l");
    const double dev = chain_deviation(p);
    return fail_if(dev > 1e-9 * (1.0 + p.alpha * p.beta), "chain deviation " + num(dev));
  });
  s.run("synthesizer", "budget-and-determinism", "hard_instance(2,1,8), D=2, N0=600", [&] {
    const auto m = hard_instance(2.0, 1.0, 8);
    SynthesisConfig cfg;
    cfg.depth = 2;
    cfg.budget = 600;
    cfg.smoothness = 2.0;
    cfg.seed = rng();
    const auto a = synthesize(m, cfg);
    const auto b = synthesize(m, cfg);
    if (a.first.unit_count() > cfg.budget) return std::string("budget exceeded");
    return fail_if(serialize(a.first) != serialize(b.first), "non-deterministic output");
  });
}

void lowerbound_suite(Suite& s, Rng& rng) {
  s.run("lowerbound", "lemma5-floor", "zero, synthesized and random nets, L in {2,8}", [&] {
    for (long long L : {2LL, 8LL})
      for (double K : {1.0, 2.0}) {
        std::vector<ReluNetwork> nets{ReluNetwork::zero(1, 1), random_network(1, 8, rng),
                                      random_network(2, 10, rng)};
        SynthesisConfig cfg;
        cfg.budget = 200;
        cfg.smoothness = K;
        cfg.radius = 1.0;
        cfg.retries = 2;
        cfg.samples = 2;
        nets.push_back(synthesize(hard_instance(K, 1.0, L), cfg).first);
        for (const auto& n : nets) {
          const auto rep = verify_lemma5(n, K, 1.0, L);
          if (!rep.satisfied.first || !rep.satisfied.second)
            return "floor violated: " + rep.to_json();
        }
      }
    return std::string();
  });
  s.run("lowerbound", "crossing-bound", "D in {1,2,3}, 40 random nets each plus towers", [&] {
    for (std::size_t D : {1u, 2u, 3u}) {
      const auto rep = crossing_bound_sweep(D, 17 * D, 40, rng);
      if (rep.violations > 0)
        return "violation, counterexample at " + rep.counterexamples.front().string();
    }
    return std::string();
  });
}

}  // namespace

std::vector<VerifyEntry> run_verify(const VerifyOptions& opts) {
  std::vector<VerifyEntry> out;
  Suite s(out);
  Rng rng = substream(opts.seed, 0);
  relu_net_suite(s, rng, opts);
  piecewise_suite(s, rng);
  waveform_suite(s, rng);
  sinusoid_suite(s, rng);
  fourier_suite(s);
  synthesizer_suite(s, rng, opts);
  lowerbound_suite(s, rng);
  return out;
}

}  // namespace f2r
