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
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "f2r/errors.hpp"
#include "f2r/harness.hpp"
#include "f2r/lowerbound.hpp"
#include "f2r/piecewise.hpp"
#include "f2r/relu_net.hpp"
#include "f2r/synthesizer.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;

struct Options {
  std::string config;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> depth;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::string save_net;
  std::string load_net;
  std::string dump_pwl;
  std::string report;
  bool alpha_fault = false;
};

void add_common(CLI::App* cmd, Options& o, bool config_required) {
  auto* c = cmd->add_option("--config", o.config, "experiment config (JSON)");
  if (config_required) c->required();
  cmd->add_option("--budget", o.budget, "override: single unit budget N0");
  cmd->add_option("--depth", o.depth, "override: single depth D");
  cmd->add_option("--seed", o.seed, "override: RNG seed");
  cmd->add_option("--out", o.out, "override: output path");
  cmd->add_option("--save-net", o.save_net, "write the synthesized network");
  cmd->add_option("--load-net", o.load_net, "read a network file");
  cmd->add_option("--dump-pwl", o.dump_pwl, "write the 1-d piecewise-linear form as CSV");
  cmd->add_option("--report", o.report, "write the run report here instead of stdout");
}

f2r::ExperimentConfig make_config(f2r::Command cmd, const Options& o) {
  auto cfg = f2r::load_config(o.config, cmd);
  f2r::ConfigOverrides ov;
  ov.budget = o.budget;
  ov.depth = o.depth;
  ov.seed = o.seed;
  if (o.out) ov.out = *o.out;
  f2r::apply_overrides(cfg, ov);
  if (!o.save_net.empty()) cfg.save_net = o.save_net;
  if (!o.load_net.empty()) cfg.load_net = o.load_net;
  if (!o.dump_pwl.empty()) cfg.dump_pwl = o.dump_pwl;
  if (!o.report.empty()) cfg.report = o.report;
  return cfg;
}

void emit_report(const f2r::ExperimentConfig& cfg, const std::string& text) {
  if (cfg.report.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(cfg.report);
  if (!out) throw f2r::Error("cannot open '" + cfg.report.string() + "' for writing");
  out << text << '\n';
}

int cmd_synthesize(const f2r::ExperimentConfig& cfg) {
  f2r::SynthesisConfig sc;
  sc.depth = cfg.depths.front();
  sc.budget = cfg.budgets.front();
  sc.radius = cfg.r;
  sc.smoothness = cfg.K;
  sc.samples = cfg.samples;
  sc.retries = cfg.repeats;
  sc.seed = cfg.seed;
  sc.mc_samples = cfg.mc_samples;
  const auto [net, rep] = f2r::synthesize(cfg.measure, sc);
  const auto net_path = !cfg.save_net.empty() ? cfg.save_net : cfg.out;
  if (!net_path.empty()) f2r::save_network(net, net_path);
  if (!cfg.dump_pwl.empty()) f2r::write_pwl_csv(f2r::from_network_1d(net), cfg.dump_pwl);
  emit_report(cfg, rep.to_json());
  return kOk;
}

void print_slopes(const f2r::SweepResult& res, double K) {
  std::cerr << "# " << res.fit_note << '\n';
  for (const auto& s : res.slopes) {
    std::cerr << "depth " << s.depth << ": ";
    if (s.slope)
      std::cerr << "slope " << *s.slope << " (target " << -static_cast<double>(s.depth) / K
                << ", " << s.points << " points)\n";
    else
      std::cerr << "slope fit skipped\n";
  }
}

int cmd_sweep(const f2r::ExperimentConfig& cfg) {
  const auto res = f2r::run_sweep(cfg);
  if (cfg.out.empty()) {
    std::cout << f2r::csv_text(res.records);
  } else {
    f2r::emit_csv(res.records, cfg.out);
    f2r::emit_timing_csv(res.records, cfg.out.string() + ".timing.csv");
  }
  print_slopes(res, cfg.K);
  return kOk;
}

int cmd_verify_upper(const f2r::ExperimentConfig& cfg) {
  const auto res = f2r::run_sweep(cfg);
  if (!cfg.out.empty()) f2r::emit_csv(res.records, cfg.out);
  int failures = 0;
  for (const auto& r : res.records) {
    const bool ok = r.loss <= r.upper_bound && r.units <= r.budget;
    failures += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " depth=" << r.depth << " N0=" << r.budget
              << " units=" << r.units << " loss=" << r.loss << " bound=" << r.upper_bound
              << '\n';
  }
  print_slopes(res, cfg.K);
  return failures ? kVerifyFailed : kOk;
}

int cmd_verify_lower(const f2r::ExperimentConfig& cfg) {
  const auto& hp = cfg.measure.hard_instance_params();
  if (!hp) throw f2r::ConfigError("config field 'measure': verify-lower needs hard_instance");
  int failures = 0;
  auto check = [&](const f2r::ReluNetwork& net, const std::string& label) {
    const auto rep = f2r::verify_lemma5(net, hp->K, hp->r, hp->L);
    const bool ok = rep.satisfied.first && rep.satisfied.second;
    failures += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << label << " crossing=" << rep.crossing
              << " loss=" << rep.measured_loss << " lemma_floor=" << rep.lemma5_floor
              << " depth_floor=" << rep.theorem2_floor
              << (rep.theorem2_applicable ? "" : " (not in regime)") << '\n';
  };
  if (!cfg.load_net.empty()) {
    check(f2r::load_network(cfg.load_net), cfg.load_net.string());
    return failures ? kVerifyFailed : kOk;
  }
  f2r::Rng rng = f2r::substream(cfg.seed, 0xc0ffee);
  for (std::size_t d : cfg.depths) {
    for (std::size_t b : cfg.budgets) {
      f2r::SynthesisConfig sc;
      sc.depth = d;
      sc.budget = b;
      sc.radius = cfg.r;
      sc.smoothness = cfg.K;
      sc.samples = cfg.samples;
      sc.retries = cfg.repeats;
      sc.seed = f2r::point_seed(cfg.seed, d, b);
      check(f2r::synthesize(cfg.measure, sc).first,
            "synthesized depth=" + std::to_string(d) + " N0=" + std::to_string(b));
      const auto sweep = f2r::crossing_bound_sweep(d, b, cfg.crossing_trials, rng);
      failures += sweep.violations > 0;
      std::cout << (sweep.violations ? "FAIL" : "PASS") << " crossing bound depth=" << d
                << " N0=" << b << " max_ratio=" << sweep.max_random_ratio
                << " tower_ratio=" << sweep.max_adversarial_ratio << '\n';
      for (const auto& p : sweep.counterexamples) std::cout << "  counterexample " << p << '\n';
    }
  }
  return failures ? kVerifyFailed : kOk;
}

int cmd_oracle_suite(const Options& o) {
  f2r::VerifyOptions vo;
  if (!o.config.empty()) vo.seed = make_config(f2r::Command::OracleSuite, o).seed;
  if (o.seed) vo.seed = *o.seed;
  if (!o.load_net.empty()) vo.network_file = o.load_net;
  vo.corrupt_alpha_chain = o.alpha_fault;
  int failures = 0;
  for (const auto& e : f2r::run_verify(vo)) {
    failures += !e.passed;
    std::cout << (e.passed ? "PASS " : "FAIL ") << e.module << '/' << e.invariant << " ["
              << e.inputs << ']';
    if (!e.passed) std::cout << ": " << e.detail;
    std::cout << '\n';
  }
  return failures ? kVerifyFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive ReLU approximation of Fourier-sparse targets"};
  app.require_subcommand(1);
  Options o;
  auto* synth = app.add_subcommand("synthesize", "build one network and report its loss");
  auto* sweep = app.add_subcommand("sweep", "loss against budget for each depth (CSV)");
  auto* upper = app.add_subcommand("verify-upper", "check measured losses against the upper bound");
  auto* lower = app.add_subcommand("verify-lower", "check loss floors and crossing bounds");
  auto* oracle = app.add_subcommand("oracle-suite", "run the invariant suites of every module");
  for (auto* c : {synth, sweep, upper, lower}) add_common(c, o, true);
  add_common(oracle, o, false);
  oracle->add_flag("--inject-alpha-chain-fault", o.alpha_fault,
                   "perturb one deep-net half-width (negative test)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  try {
    if (oracle->parsed()) return cmd_oracle_suite(o);
    f2r::Command cmd = synth->parsed()   ? f2r::Command::Synthesize
                       : sweep->parsed() ? f2r::Command::Sweep
                       : upper->parsed() ? f2r::Command::VerifyUpper
                                         : f2r::Command::VerifyLower;
    const auto cfg = make_config(cmd, o);
    switch (cmd) {
      case f2r::Command::Synthesize: return cmd_synthesize(cfg);
      case f2r::Command::Sweep: return cmd_sweep(cfg);
      case f2r::Command::VerifyUpper: return cmd_verify_upper(cfg);
      default: return cmd_verify_lower(cfg);
    }
  } catch (const f2r::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
}
