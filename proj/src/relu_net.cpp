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

#include "f2r/relu_net.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "f2r/errors.hpp"

namespace f2r {

namespace {

constexpr const char* kFormatName = "fourier2relu.network";
constexpr int kFormatVersion = 1;

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

LayerSpec::LayerSpec(std::size_t input_dim, std::vector<double> weights,
                     std::vector<double> thresholds)
    : input_dim_(input_dim),
      weights_(std::move(weights)),
      thresholds_(std::move(thresholds)) {
  if (input_dim_ == 0) throw PreconditionError("layer: input_dim must be positive");
  if (thresholds_.empty()) throw PreconditionError("layer: needs at least one unit");
  if (weights_.size() != thresholds_.size() * input_dim_)
    throw PreconditionError("layer: weight count " + std::to_string(weights_.size()) +
                            " != units * input_dim = " +
                            std::to_string(thresholds_.size() * input_dim_));
  if (!all_finite(weights_) || !all_finite(thresholds_))
    throw PreconditionError("layer: non-finite weight or threshold");
}

void LayerSpec::apply(std::span<const double> in, std::span<double> out) const {
  const double* w = weights_.data();
  for (std::size_t i = 0; i < thresholds_.size(); ++i, w += input_dim_) {
    double z = -thresholds_[i];
    for (std::size_t j = 0; j < input_dim_; ++j) z += w[j] * in[j];
    out[i] = z > 0.0 ? z : 0.0;
  }
}

ReluNetwork::ReluNetwork(std::size_t input_dim, std::vector<LayerSpec> layers,
                         std::vector<double> readout)
    : input_dim_(input_dim), layers_(std::move(layers)), readout_(std::move(readout)) {
  if (input_dim_ == 0) throw PreconditionError("network: input_dim must be positive");
  if (layers_.empty()) throw PreconditionError("network: needs at least one layer");
  std::size_t width = input_dim_;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].input_dim() != width)
      throw PreconditionError("network: layer " + std::to_string(i + 1) + " expects " +
                              std::to_string(layers_[i].input_dim()) +
                              " inputs but receives " + std::to_string(width));
    width = layers_[i].units();
  }
  if (readout_.size() != width)
    throw PreconditionError("network: read-out length " + std::to_string(readout_.size()) +
                            " != last layer width " + std::to_string(width));
  if (!all_finite(readout_)) throw PreconditionError("network: non-finite read-out");
}

ReluNetwork ReluNetwork::zero(std::size_t input_dim, std::size_t depth) {
  std::vector<LayerSpec> layers;
  layers.emplace_back(input_dim, std::vector<double>(input_dim, 0.0),
                      std::vector<double>{0.0});
  for (std::size_t i = 1; i < depth; ++i)
    layers.emplace_back(1, std::vector<double>{0.0}, std::vector<double>{0.0});
  return ReluNetwork(input_dim, std::move(layers), {0.0});
}

std::vector<double> ReluNetwork::hidden(std::span<const double> x) const {
  if (x.size() != input_dim_)
    throw PreconditionError("evaluate: input has length " + std::to_string(x.size()) +
                            ", network expects " + std::to_string(input_dim_));
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b;
  for (const auto& layer : layers_) {
    b.resize(layer.units());
    layer.apply(a, b);
    std::swap(a, b);
  }
  return a;
}

double ReluNetwork::evaluate(std::span<const double> x) const {
  const auto h = hidden(x);
  double y = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) y += readout_[i] * h[i];
  return y;
}

double ReluNetwork::evaluate(double t) const {
  return evaluate(std::span<const double>(&t, 1));
}

std::size_t ReluNetwork::unit_count() const noexcept {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.units();
  return n;
}

std::size_t ReluNetwork::max_width() const noexcept {
  std::size_t n = 0;
  for (const auto& layer : layers_) n = std::max(n, layer.units());
  return n;
}

ReluNetwork parallel_merge(std::span<const ReluNetwork> subnets,
                           std::span<const double> coeffs) {
  if (subnets.empty()) throw PreconditionError("parallel_merge: no subnets");
  if (coeffs.size() != subnets.size())
    throw PreconditionError("parallel_merge: " + std::to_string(coeffs.size()) +
                            " coefficients for " + std::to_string(subnets.size()) +
                            " subnets");
  const std::size_t d = subnets.front().input_dim();
  const std::size_t depth = subnets.front().depth();
  for (const auto& net : subnets) {
    if (net.input_dim() != d)
      throw PreconditionError("parallel_merge: input dimensions differ");
    if (net.depth() != depth)
      throw PreconditionError("parallel_merge: depths differ (" +
                              std::to_string(net.depth()) + " vs " +
                              std::to_string(depth) + "); pad subnets first");
  }

  std::vector<LayerSpec> layers;
  layers.reserve(depth);
  std::size_t prev_total = d;
  for (std::size_t li = 0; li < depth; ++li) {
    std::size_t total = 0;
    for (const auto& net : subnets) total += net.layer(li).units();
    std::vector<double> weights(total * prev_total, 0.0);
    std::vector<double> thresholds;
    thresholds.reserve(total);
    std::size_t row = 0;
    std::size_t col = 0;  // column offset of this subnet's block
    for (const auto& net : subnets) {
      const auto& layer = net.layer(li);
      const std::size_t offset = li == 0 ? 0 : col;
      for (std::size_t u = 0; u < layer.units(); ++u, ++row) {
        const auto src = layer.row(u);
        std::copy(src.begin(), src.end(), weights.begin() + row * prev_total + offset);
        thresholds.push_back(layer.threshold(u));
      }
      if (li > 0) col += net.layer(li - 1).units();
    }
    layers.emplace_back(prev_total, std::move(weights), std::move(thresholds));
    prev_total = total;
  }

  std::vector<double> readout;
  readout.reserve(prev_total);
  for (std::size_t j = 0; j < subnets.size(); ++j)
    for (double a : subnets[j].readout()) readout.push_back(coeffs[j] * a);
  return ReluNetwork(d, std::move(layers), std::move(readout));
}

std::string serialize(const ReluNetwork& net) {
  using nlohmann::json;
  json doc;
  doc["format"] = kFormatName;
  doc["version"] = kFormatVersion;
  doc["input_dim"] = net.input_dim();
  json layers = json::array();
  for (const auto& layer : net.layers()) {
    json rows = json::array();
    for (std::size_t u = 0; u < layer.units(); ++u) {
      const auto r = layer.row(u);
      rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    layers.push_back({{"units", layer.units()},
                      {"inputs", layer.input_dim()},
                      {"weights", std::move(rows)},
                      {"thresholds", layer.thresholds()}});
  }
  doc["layers"] = std::move(layers);
  doc["readout"] = net.readout();
  return doc.dump(1) + "\n";
}

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* key,
                            const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError("network: missing field '" + std::string(key) + "' in " + where);
  return obj.at(key);
}

std::size_t as_size(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError("network: expected non-negative integer at " + where);
  return v.get<std::size_t>();
}

std::vector<double> as_reals(const nlohmann::json& v, std::size_t expected,
                             const std::string& where) {
  if (!v.is_array() || v.size() != expected)
    throw ParseError("network: expected array of " + std::to_string(expected) +
                     " numbers at " + where);
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& e : v) {
    if (!e.is_number()) throw ParseError("network: non-numeric entry at " + where);
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

ReluNetwork deserialize(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("network: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("network: top level is not an object");
  const auto& fmt = field(doc, "format", "document");
  if (!fmt.is_string() || fmt.get<std::string>() != kFormatName)
    throw ParseError("network: unknown format tag");
  const auto version = as_size(field(doc, "version", "document"), "version");
  if (version != kFormatVersion)
    throw ParseError("network: unsupported version " + std::to_string(version));
  const std::size_t d = as_size(field(doc, "input_dim", "document"), "input_dim");
  const auto& jl = field(doc, "layers", "document");
  if (!jl.is_array() || jl.empty()) throw ParseError("network: 'layers' must be a non-empty array");

  std::vector<LayerSpec> layers;
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const std::string where = "layers[" + std::to_string(i) + "]";
    const auto& lj = jl[i];
    const std::size_t units = as_size(field(lj, "units", where), where + ".units");
    const std::size_t inputs = as_size(field(lj, "inputs", where), where + ".inputs");
    const auto& rows = field(lj, "weights", where);
    if (!rows.is_array() || rows.size() != units)
      throw ParseError("network: " + where + ".weights must have " +
                       std::to_string(units) + " rows");
    std::vector<double> weights;
    weights.reserve(units * inputs);
    for (std::size_t u = 0; u < units; ++u) {
      auto r = as_reals(rows[u], inputs, where + ".weights[" + std::to_string(u) + "]");
      weights.insert(weights.end(), r.begin(), r.end());
    }
    auto thresholds = as_reals(field(lj, "thresholds", where), units, where + ".thresholds");
    try {
      layers.emplace_back(inputs, std::move(weights), std::move(thresholds));
    } catch (const PreconditionError& e) {
      throw ParseError("network: " + where + ": " + e.what());
    }
  }
  const std::size_t last = layers.back().units();
  auto readout = as_reals(field(doc, "readout", "document"), last, "readout");
  try {
    return ReluNetwork(d, std::move(layers), std::move(readout));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("network: ") + e.what());
  }
}

void save_network(const ReluNetwork& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << serialize(net);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

ReluNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open network file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return deserialize(buf.str());
  } catch (const ParseError& e) {
    throw ParseError("'" + path.string() + "': " + e.detail(), e.position());
  }
}

}  // namespace f2r
