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

#include "f2r/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "f2r/errors.hpp"
#include "f2r/lowerbound.hpp"
#include "f2r/rng.hpp"
#include "f2r/synthesizer.hpp"

namespace f2r {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

double get_number(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) bad(path + key, "missing");
  if (!j[key].is_number()) bad(path + key, "must be a number");
  return j[key].get<double>();
}

std::uint64_t get_uint(const json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned())
    bad(path + key, "must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::vector<std::size_t> get_uint_list(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  std::vector<std::size_t> out;
  if (v.is_number()) {
    out.push_back(static_cast<std::size_t>(get_uint(j, key, "")));
    return out;
  }
  if (v.is_object() && v.contains("geometric")) {
    const auto& g = v["geometric"];
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_unsigned() || !g[1].is_number_unsigned())
      bad(key + ".geometric", "must be [first, last] positive integers");
    const auto first = g[0].get<std::size_t>();
    const auto last = g[1].get<std::size_t>();
    if (first == 0 || last < first) bad(key + ".geometric", "needs 0 < first <= last");
    for (std::size_t b = first; b <= last; b *= 2) out.push_back(b);
    return out;
  }
  if (!v.is_array()) bad(key, "must be an integer, a list, or {\"geometric\": [a, b]}");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned())
      bad(key + "[" + std::to_string(i) + "]", "must be a nonnegative integer");
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

FourierMeasure measure_from_json(const json& m) {
  if (!m.is_object()) bad("measure", "must be an object");
  if (!m.contains("family") || !m["family"].is_string()) bad("measure.family", "missing");
  const auto family = m["family"].get<std::string>();
  try {
    if (family == "hard_instance") {
      const double L = get_number(m, "L", "measure.");
      if (L != std::floor(L) || L < 1) bad("measure.L", "must be a positive integer");
      return hard_instance(get_number(m, "K", "measure."), get_number(m, "r", "measure."),
                           static_cast<long long>(L));
    }
    if (family == "gaussian") {
      const double d = get_number(m, "d", "measure.");
      if (d != std::floor(d) || d < 1) bad("measure.d", "must be a positive integer");
      return gaussian_measure(static_cast<std::size_t>(d));
    }
    if (family == "scaled_cosine")
      return scaled_cosine(get_number(m, "n", "measure."), get_number(m, "a", "measure."));
    if (family == "atoms") {
      if (!m.contains("atoms") || !m["atoms"].is_array()) bad("measure.atoms", "must be a list");
      std::vector<FourierAtom> atoms;
      std::size_t dim = 0;
      for (std::size_t i = 0; i < m["atoms"].size(); ++i) {
        const auto& a = m["atoms"][i];
        const std::string p = "measure.atoms[" + std::to_string(i) + "].";
        if (!a.is_object()) bad(p, "must be an object");
        FourierAtom atom;
        if (!a.contains("xi")) bad(p + "xi", "missing");
        if (a["xi"].is_number()) {
          atom.xi = {a["xi"].get<double>()};
        } else if (a["xi"].is_array()) {
          for (const auto& x : a["xi"]) {
            if (!x.is_number()) bad(p + "xi", "must contain numbers");
            atom.xi.push_back(x.get<double>());
          }
        } else {
          bad(p + "xi", "must be a number or a list");
        }
        atom.weight = get_number(a, "weight", p);
        atom.phase = a.contains("phase") ? get_number(a, "phase", p) : 0.0;
        if (dim == 0) dim = atom.xi.size();
        atoms.push_back(std::move(atom));
      }
      return FourierMeasure::from_atoms(dim == 0 ? 1 : dim, std::move(atoms));
    }
  } catch (const PreconditionError& e) {
    bad("measure", e.what());
  }
  bad("measure.family", "unknown family '" + family + "'");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error("error writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
void put(std::string& out, T v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

template <class T>
T take(std::string_view field, std::size_t line) {
  T v{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw ParseError("csv line " + std::to_string(line) + ": bad number '" +
                     std::string(field) + "'");
  return v;
}

constexpr std::string_view kHeader = "depth,K,N0,units,loss,upper_bound,lower_floor,seed";

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "synthesize") return Command::Synthesize;
  if (name == "sweep") return Command::Sweep;
  if (name == "verify-upper") return Command::VerifyUpper;
  if (name == "verify-lower") return Command::VerifyLower;
  if (name == "oracle-suite") return Command::OracleSuite;
  return std::nullopt;
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Synthesize: return "synthesize";
    case Command::Sweep: return "sweep";
    case Command::VerifyUpper: return "verify-upper";
    case Command::VerifyLower: return "verify-lower";
    case Command::OracleSuite: return "oracle-suite";
  }
  return "?";
}

FourierMeasure parse_measure(std::string_view text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config field 'measure': " + std::string(e.what()));
  }
  return measure_from_json(j);
}

ExperimentConfig parse_config(std::string_view text, Command command) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON (at byte " + std::to_string(e.byte) + ")");
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.command = command;
  if (j.contains("command")) {
    if (!j["command"].is_string() || !parse_command(j["command"].get<std::string>()))
      bad("command", "unknown command");
  }
  if (!j.contains("measure")) bad("measure", "missing");
  cfg.measure = measure_from_json(j["measure"]);
  cfg.measure_family = j["measure"]["family"].get<std::string>();
  const auto& hp = cfg.measure.hard_instance_params();
  if (j.contains("K"))
    cfg.K = get_number(j, "K", "");
  else if (hp)
    cfg.K = hp->K;
  if (j.contains("r"))
    cfg.r = get_number(j, "r", "");
  else if (hp)
    cfg.r = hp->r;
  if (j.contains("depths")) cfg.depths = get_uint_list(j, "depths");
  if (j.contains("depth")) cfg.depths = get_uint_list(j, "depth");
  if (j.contains("budgets")) cfg.budgets = get_uint_list(j, "budgets");
  if (j.contains("budget")) cfg.budgets = get_uint_list(j, "budget");
  if (j.contains("repeats")) cfg.repeats = get_uint(j, "repeats", "");
  if (j.contains("seed")) cfg.seed = get_uint(j, "seed", "");
  if (j.contains("samples") && !(j["samples"].is_string() && j["samples"] == "auto"))
    cfg.samples = get_uint(j, "samples", "");
  if (j.contains("mc_samples")) cfg.mc_samples = get_uint(j, "mc_samples", "");
  if (j.contains("crossing_trials")) cfg.crossing_trials = get_uint(j, "crossing_trials", "");
  for (const char* key : {"out", "report", "save_net", "load_net", "dump_pwl"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_string()) bad(key, "must be a path string");
    const std::filesystem::path p = j[key].get<std::string>();
    if (std::string_view(key) == "out") cfg.out = p;
    if (std::string_view(key) == "report") cfg.report = p;
    if (std::string_view(key) == "save_net") cfg.save_net = p;
    if (std::string_view(key) == "load_net") cfg.load_net = p;
    if (std::string_view(key) == "dump_pwl") cfg.dump_pwl = p;
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, Command command) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, command);
}

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& o) {
  if (o.budget) cfg.budgets = {*o.budget};
  if (o.depth) cfg.depths = {*o.depth};
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out = *o.out;
  cfg.validate();
}

void ExperimentConfig::validate() const {
  if (budgets.empty()) bad("budgets", "must not be empty");
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (budgets[i] < 2) bad("budgets", "every budget must be >= 2");
    if (i > 0 && budgets[i] <= budgets[i - 1]) bad("budgets", "must be strictly increasing");
  }
  if (depths.empty()) bad("depths", "must not be empty");
  for (std::size_t d : depths) {
    if (d < 1) bad("depths", "every depth must be >= 1");
    if (static_cast<double>(d) > K) bad("depths", "depth must not exceed K");
    for (std::size_t b : budgets)
      if (b < d) bad("budgets", "every budget must be >= depth");
  }
  if (!(K >= 1.0)) bad("K", "must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) bad("r", "must be positive");
  if (repeats < 1) bad("repeats", "must be >= 1");
  if (samples && *samples == 0) bad("samples", "must be positive or \"auto\"");
  if (mc_samples < 2) bad("mc_samples", "must be >= 2");
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t depth, std::size_t budget) {
  return mix64(mix64(seed) ^ mix64(depth * 0x9e3779b97f4a7c15ULL + budget));
}

DepthSlope fit_slope(const std::vector<SweepRecord>& records, std::size_t depth) {
  DepthSlope out;
  out.depth = depth;
  std::vector<const SweepRecord*> pts;
  for (const auto& r : records)
    if (r.depth == depth) pts.push_back(&r);
  if (pts.size() < 2) return out;
  double lo = std::log(static_cast<double>(pts.front()->budget));
  double hi = lo;
  for (const auto* p : pts) {
    lo = std::min(lo, std::log(static_cast<double>(p->budget)));
    hi = std::max(hi, std::log(static_cast<double>(p->budget)));
  }
  const double mid = 0.5 * (lo + hi);
  std::vector<double> xs, ys;
  for (const auto* p : pts) {
    const double x = std::log(static_cast<double>(p->budget));
    if (x < mid - 1e-12) continue;
    if (!(p->loss >= 1e-10)) return out;
    xs.push_back(x);
    ys.push_back(std::log(p->loss));
  }
  out.points = xs.size();
  if (xs.size() < 2) return out;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx > 0.0) out.slope = sxy / sxx;
  return out;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Point {
    std::size_t depth, budget;
  };
  std::vector<Point> points;
  for (std::size_t d : cfg.depths)
    for (std::size_t b : cfg.budgets) points.push_back({d, b});
  SweepResult res;
  res.records.resize(points.size());
  const auto& hp = cfg.measure.hard_instance_params();
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto start = std::chrono::steady_clock::now();
    SynthesisConfig sc;
    sc.depth = points[i].depth;
    sc.budget = points[i].budget;
    sc.radius = cfg.r;
    sc.smoothness = cfg.K;
    sc.samples = cfg.samples;
    sc.retries = cfg.repeats;
    sc.seed = point_seed(cfg.seed, sc.depth, sc.budget);
    sc.mc_samples = cfg.mc_samples;
    const auto [net, rep] = synthesize(cfg.measure, sc);
    auto& rec = res.records[i];
    rec.depth = sc.depth;
    rec.K = cfg.K;
    rec.budget = sc.budget;
    rec.units = rep.unit_count;
    rec.loss = rep.loss;
    rec.upper_bound = rep.bound;
    rec.lower_floor =
        hp ? theorem2_floor(sc.budget, sc.depth, cfg.K, cfg.r, cfg.measure).value : 0.0;
    rec.seed = sc.seed;
    rec.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  std::sort(res.records.begin(), res.records.end(), [](const auto& a, const auto& b) {
    return a.depth != b.depth ? a.depth < b.depth : a.budget < b.budget;
  });
  for (std::size_t d : cfg.depths) res.slopes.push_back(fit_slope(res.records, d));
  res.fit_note = "slope fit over budgets in the upper half of the log-budget range";
  return res;
}

std::string csv_text(const std::vector<SweepRecord>& records) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& r : records) {
    put(out, r.depth);
    out += ',';
    put(out, r.K);
    out += ',';
    put(out, r.budget);
    out += ',';
    put(out, r.units);
    out += ',';
    put(out, r.loss);
    out += ',';
    put(out, r.upper_bound);
    out += ',';
    put(out, r.lower_floor);
    out += ',';
    put(out, r.seed);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path) {
  write_file(path, csv_text(records));
}

void emit_timing_csv(const std::vector<SweepRecord>& records,
                     const std::filesystem::path& path) {
  std::string out = "depth,N0,wall_time_s\n";
  for (const auto& r : records) {
    put(out, r.depth);
    out += ',';
    put(out, r.budget);
    out += ',';
    put(out, r.wall_time);
    out += '\n';
  }
  write_file(path, out);
}

std::vector<SweepRecord> parse_csv(std::string_view text) {
  std::vector<SweepRecord> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line_no == 1) {
      if (line != kHeader) throw ParseError("csv: unexpected header '" + std::string(line) + "'");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    for (std::size_t pos = 0;;) {
      const auto comma = line.find(',', pos);
      f.push_back(line.substr(pos, comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (f.size() != 8)
      throw ParseError("csv line " + std::to_string(line_no) + ": expected 8 fields");
    SweepRecord r;
    r.depth = take<std::size_t>(f[0], line_no);
    r.K = take<double>(f[1], line_no);
    r.budget = take<std::size_t>(f[2], line_no);
    r.units = take<std::size_t>(f[3], line_no);
    r.loss = take<double>(f[4], line_no);
    r.upper_bound = take<double>(f[5], line_no);
    r.lower_floor = take<double>(f[6], line_no);
    r.seed = take<std::uint64_t>(f[7], line_no);
    out.push_back(r);
  }
  if (line_no == 0) throw ParseError("csv: empty input");
  return out;
}

std::vector<SweepRecord> load_csv(const std::filesystem::path& path) {
  return parse_csv(read_file(path));
}

}  // namespace f2r
