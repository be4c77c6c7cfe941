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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "f2r/fourier.hpp"

namespace f2r {

enum class Command { Synthesize, Sweep, VerifyUpper, VerifyLower, OracleSuite };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command c);

struct ExperimentConfig {
  Command command = Command::Sweep;
  FourierMeasure measure = hard_instance(1.0, 1.0, 1);
  std::string measure_family;
  std::vector<std::size_t> depths{1};
  std::vector<std::size_t> budgets{1024};
  double K = 1.0;
  double r = 1.0;
  std::size_t repeats = 8;
  std::uint64_t seed = 0;
  std::optional<std::size_t> samples;
  std::size_t mc_samples = 20000;
  std::size_t crossing_trials = 100;
  std::filesystem::path out;       // CSV (sweeps) or network file (synthesize)
  std::filesystem::path report;    // run report; stdout when empty
  std::filesystem::path save_net;
  std::filesystem::path load_net;
  std::filesystem::path dump_pwl;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Flag values that override the file.
struct ConfigOverrides {
  std::optional<std::size_t> budget;
  std::optional<std::size_t> depth;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
};

// Both throw ConfigError (with the field name) on malformed input.
ExperimentConfig parse_config(std::string_view text, Command command);
ExperimentConfig load_config(const std::filesystem::path& path, Command command);
void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& o);

// Measure from its JSON description (see README for the families).
FourierMeasure parse_measure(std::string_view json_text);

struct SweepRecord {
  std::size_t depth = 0;
  double K = 0.0;
  std::size_t budget = 0;
  std::size_t units = 0;
  double loss = 0.0;
  double upper_bound = 0.0;
  double lower_floor = 0.0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds; kept out of the main CSV

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct DepthSlope {
  std::size_t depth = 0;
  std::optional<double> slope;  // empty when the fit was skipped
  std::size_t points = 0;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // sorted by (depth, budget)
  std::vector<DepthSlope> slopes;
  std::string fit_note;
};

// Seed used for the sweep point (depth, budget).
std::uint64_t point_seed(std::uint64_t seed, std::size_t depth, std::size_t budget);

SweepResult run_sweep(const ExperimentConfig& cfg);

// Least-squares slope of log(loss) against log(budget) over the budgets in the
// upper half of the log-budget range. Skipped (empty) with fewer than two
// points or when any of them has loss below 1e-10.
DepthSlope fit_slope(const std::vector<SweepRecord>& records, std::size_t depth);

// Header plus one row per record, columns
// depth,K,N0,units,loss,upper_bound,lower_floor,seed.
std::string csv_text(const std::vector<SweepRecord>& records);
void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path);
// depth,N0,wall_time_s next to the main file.
void emit_timing_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path);
std::vector<SweepRecord> parse_csv(std::string_view text);
std::vector<SweepRecord> load_csv(const std::filesystem::path& path);

// Invariant suites of every module.
struct VerifyEntry {
  std::string module;
  std::string invariant;
  bool passed = false;
  std::string inputs;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> network_file;
  bool corrupt_alpha_chain = false;  // test hook
};

std::vector<VerifyEntry> run_verify(const VerifyOptions& opts);

}  // namespace f2r
