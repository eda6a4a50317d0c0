// Copyright 2026 The sdcdrive Authors.
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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sdcdrive {

// Row-major float32 tensor with an explicit shape.
struct NamedTensor {
  std::vector<std::size_t> shape;
  std::vector<float> values;

  std::size_t dim(std::size_t i) const { return shape.at(i); }
};

// Weight bundle for the waypoint GRU loop and the MLP agent.
//
// Tensor names and shapes (F = feature size, H = hidden size, M = MLP width):
//   reduce.weight  [H, F]   reduce.bias  [H]
//   gru.weight_ih  [3H, 5]  gru.bias_ih  [3H]   gate blocks ordered (reset, update, new)
//   gru.weight_hh  [3H, H]  gru.bias_hh  [3H]
//   tlss.weight    [H, 2]   tlss.bias    [H]
//   head.weight    [2, H]   head.bias    [2]
//   mlp.fc1.weight [M, H]   mlp.fc1.bias [M]
//   mlp.fc2.weight [3, M]   mlp.fc2.bias [3]
//
// File format: a text header, then the little-endian float32 payload of every
// tensor concatenated in header order.
//   sdcdrive-weights 1
//   tensor <name> f32 <dim0> [<dim1> ...]
//   ...
//   end
class WeightBundle {
 public:
  static constexpr std::size_t kGruInput = 5;

  WeightBundle() = default;
  explicit WeightBundle(std::map<std::string, NamedTensor> tensors);

  const NamedTensor& at(const std::string& name) const;
  const std::map<std::string, NamedTensor>& tensors() const { return tensors_; }

  std::size_t feature_size() const { return feature_size_; }
  std::size_t hidden_size() const { return hidden_size_; }
  std::size_t mlp_width() const { return mlp_width_; }

  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static WeightBundle load(std::istream& in);
  static WeightBundle load(const std::filesystem::path& path);

  // All weights drawn uniformly in +/- 1/sqrt(fan_in), biases zero.
  static WeightBundle random(std::uint64_t seed, std::size_t features = 384, std::size_t hidden = 232,
                             std::size_t mlp_width = 64);
  static WeightBundle zeros(std::size_t features = 384, std::size_t hidden = 232, std::size_t mlp_width = 64);

  NamedTensor& mutable_tensor(const std::string& name);

 private:
  void validate();

  std::map<std::string, NamedTensor> tensors_;
  std::size_t feature_size_ = 0;
  std::size_t hidden_size_ = 0;
  std::size_t mlp_width_ = 0;
};

// y = W x + b, accumulated in double.
std::vector<double> linear(const NamedTensor& weight, const NamedTensor& bias, std::span<const double> x);

// One GRU step: r = s(W_ir x + b_ir + W_hr h + b_hr), z = s(W_iz x + b_iz + W_hz h + b_hz),
// n = tanh(W_in x + b_in + r * (W_hn h + b_hn)), h' = (1 - z) * n + z * h.
std::vector<double> gru_cell(const WeightBundle& w, std::span<const double> input, std::span<const double> hidden);

double sigmoid(double x);

}  // namespace sdcdrive
