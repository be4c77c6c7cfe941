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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace f2r {

// One ReLU layer: unit i computes ReLU(<W_i, x> - T_i). Weights are stored
// row-major, one row per unit; the unit count is the row count.
class LayerSpec {
 public:
  LayerSpec() = default;
  // Throws PreconditionError if the sizes are inconsistent or any entry is
  // not finite.
  LayerSpec(std::size_t input_dim, std::vector<double> weights,
            std::vector<double> thresholds);

  std::size_t units() const noexcept { return thresholds_.size(); }
  std::size_t input_dim() const noexcept { return input_dim_; }

  std::span<const double> row(std::size_t unit) const {
    return {weights_.data() + unit * input_dim_, input_dim_};
  }
  double weight(std::size_t unit, std::size_t input) const {
    return weights_[unit * input_dim_ + input];
  }
  double threshold(std::size_t unit) const { return thresholds_[unit]; }

  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<double>& thresholds() const noexcept { return thresholds_; }

  // out[i] = ReLU(<W_i, in> - T_i)
  void apply(std::span<const double> in, std::span<double> out) const;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;

 private:
  std::size_t input_dim_ = 0;
  std::vector<double> weights_;
  std::vector<double> thresholds_;
};

// f(x) = <a, f_D o ... o f_1(x)>, with no bias on the read-out.
class ReluNetwork {
 public:
  ReluNetwork() = default;
  // Validates dimension chaining; throws PreconditionError.
  ReluNetwork(std::size_t input_dim, std::vector<LayerSpec> layers,
              std::vector<double> readout);

  // A depth-D network with one dead unit per layer and zero read-out.
  static ReluNetwork zero(std::size_t input_dim, std::size_t depth);

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t depth() const noexcept { return layers_.size(); }
  const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
  const LayerSpec& layer(std::size_t i) const { return layers_[i]; }
  const std::vector<double>& readout() const noexcept { return readout_; }

  // Throws PreconditionError when x.size() != input_dim().
  double evaluate(std::span<const double> x) const;
  double evaluate(double t) const;  // input_dim() must be 1

  // Activations of the last layer (before the read-out).
  std::vector<double> hidden(std::span<const double> x) const;

  std::size_t unit_count() const noexcept;
  std::size_t max_width() const noexcept;

  friend bool operator==(const ReluNetwork&, const ReluNetwork&) = default;

 private:
  std::size_t input_dim_ = 0;
  std::vector<LayerSpec> layers_;
  std::vector<double> readout_;
};

inline std::size_t unit_count(const ReluNetwork& net) { return net.unit_count(); }

// Block-diagonal stacking: evaluate(merged, x) = sum_j coeffs[j] *
// evaluate(subnets[j], x). All subnets must share input_dim and depth.
ReluNetwork parallel_merge(std::span<const ReluNetwork> subnets,
                           std::span<const double> coeffs);

// Self-describing JSON text with explicit dims and a format version.
// Floats are written in shortest round-trip form, so deserialize(serialize(n))
// reproduces every weight bit for bit.
std::string serialize(const ReluNetwork& net);
// Throws ParseError (with byte position for syntax errors).
ReluNetwork deserialize(std::string_view text);

// File wrappers; errors carry the path.
void save_network(const ReluNetwork& net, const std::filesystem::path& path);
ReluNetwork load_network(const std::filesystem::path& path);

}  // namespace f2r
