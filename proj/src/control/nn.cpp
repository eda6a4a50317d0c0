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

#include "sdcdrive/control/nn.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sdcdrive/common/tensor_io.hpp"

namespace sdcdrive {
namespace {

constexpr const char* kMagicLine = "sdcdrive-weights 1";

std::size_t numel(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

void expect_shape(const std::map<std::string, NamedTensor>& t, const std::string& name,
                  const std::vector<std::size_t>& shape) {
  const auto it = t.find(name);
  if (it == t.end()) throw std::invalid_argument("weight bundle is missing tensor '" + name + "'");
  if (it->second.shape != shape) {
    std::ostringstream msg;
    msg << "weight bundle tensor '" << name << "' has shape [";
    for (std::size_t i = 0; i < it->second.shape.size(); ++i) msg << (i ? "," : "") << it->second.shape[i];
    msg << "], expected [";
    for (std::size_t i = 0; i < shape.size(); ++i) msg << (i ? "," : "") << shape[i];
    msg << "]";
    throw std::invalid_argument(msg.str());
  }
  if (it->second.values.size() != numel(shape)) {
    throw std::invalid_argument("weight bundle tensor '" + name + "' has wrong element count");
  }
}

std::map<std::string, NamedTensor> make_tensors(std::size_t f, std::size_t h, std::size_t m) {
  const std::vector<std::pair<std::string, std::vector<std::size_t>>> layout = {
      {"reduce.weight", {h, f}},      {"reduce.bias", {h}},           {"gru.weight_ih", {3 * h, WeightBundle::kGruInput}},
      {"gru.bias_ih", {3 * h}},       {"gru.weight_hh", {3 * h, h}},  {"gru.bias_hh", {3 * h}},
      {"tlss.weight", {h, 2}},        {"tlss.bias", {h}},             {"head.weight", {2, h}},
      {"head.bias", {2}},             {"mlp.fc1.weight", {m, h}},     {"mlp.fc1.bias", {m}},
      {"mlp.fc2.weight", {3, m}},     {"mlp.fc2.bias", {3}}};
  std::map<std::string, NamedTensor> out;
  for (const auto& [name, shape] : layout) out[name] = {shape, std::vector<float>(numel(shape), 0.0f)};
  return out;
}

}  // namespace

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

WeightBundle::WeightBundle(std::map<std::string, NamedTensor> tensors) : tensors_(std::move(tensors)) {
  validate();
}

void WeightBundle::validate() {
  const auto& reduce = at("reduce.weight");
  if (reduce.shape.size() != 2) throw std::invalid_argument("reduce.weight must be 2-D");
  hidden_size_ = reduce.dim(0);
  feature_size_ = reduce.dim(1);
  const auto& fc1 = at("mlp.fc1.weight");
  if (fc1.shape.size() != 2) throw std::invalid_argument("mlp.fc1.weight must be 2-D");
  mlp_width_ = fc1.dim(0);
  const std::size_t h = hidden_size_, f = feature_size_, m = mlp_width_;
  if (h == 0 || f == 0 || m == 0) throw std::invalid_argument("weight bundle has an empty dimension");
  for (const auto& [name, tensor] : make_tensors(f, h, m)) expect_shape(tensors_, name, tensor.shape);
  if (tensors_.size() != 14) throw std::invalid_argument("weight bundle has unexpected extra tensors");
}

const NamedTensor& WeightBundle::at(const std::string& name) const {
  const auto it = tensors_.find(name);
  if (it == tensors_.end()) throw std::invalid_argument("weight bundle is missing tensor '" + name + "'");
  return it->second;
}

NamedTensor& WeightBundle::mutable_tensor(const std::string& name) {
  const auto it = tensors_.find(name);
  if (it == tensors_.end()) throw std::invalid_argument("weight bundle is missing tensor '" + name + "'");
  return it->second;
}

void WeightBundle::save(std::ostream& out) const {
  out << kMagicLine << '\n';
  for (const auto& [name, t] : tensors_) {
    out << "tensor " << name << " f32";
    for (auto d : t.shape) out << ' ' << d;
    out << '\n';
  }
  out << "end\n";
  std::vector<std::byte> payload;
  for (const auto& [name, t] : tensors_) {
    for (float v : t.values) append_f32_le(payload, v);
  }
  out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (!out) throw std::runtime_error("failed writing weight bundle");
}

void WeightBundle::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  save(out);
}

WeightBundle WeightBundle::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagicLine) throw std::runtime_error("not a weight bundle");
  std::vector<std::pair<std::string, std::vector<std::size_t>>> order;
  while (std::getline(in, line)) {
    if (line == "end") break;
    std::istringstream fields(line);
    std::string keyword, name, dtype;
    fields >> keyword >> name >> dtype;
    if (keyword != "tensor" || name.empty()) throw std::runtime_error("bad weight header line: " + line);
    if (dtype != "f32") throw std::runtime_error("unsupported weight dtype: " + dtype);
    std::vector<std::size_t> shape;
    std::size_t d;
    while (fields >> d) shape.push_back(d);
    if (shape.empty()) throw std::runtime_error("tensor '" + name + "' has no shape");
    order.emplace_back(name, shape);
  }
  if (line != "end") throw std::runtime_error("weight header is not terminated");
  std::map<std::string, NamedTensor> tensors;
  std::vector<std::byte> buf;
  for (auto& [name, shape] : order) {
    NamedTensor t{shape, std::vector<float>(numel(shape))};
    buf.resize(4 * t.values.size());
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
      throw std::runtime_error("truncated payload for tensor '" + name + "'");
    }
    for (std::size_t i = 0; i < t.values.size(); ++i) t.values[i] = read_f32_le(buf.data() + 4 * i);
    if (!tensors.emplace(name, std::move(t)).second) throw std::runtime_error("duplicate tensor '" + name + "'");
  }
  return WeightBundle(std::move(tensors));
}

WeightBundle WeightBundle::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open weight bundle " + path.string());
  return load(in);
}

WeightBundle WeightBundle::random(std::uint64_t seed, std::size_t features, std::size_t hidden,
                                  std::size_t mlp_width) {
  auto tensors = make_tensors(features, hidden, mlp_width);
  std::mt19937_64 rng(seed);
  for (auto& [name, t] : tensors) {
    if (t.shape.size() != 2) continue;
    const double bound = 1.0 / std::sqrt(static_cast<double>(t.shape[1]));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (float& v : t.values) v = static_cast<float>(dist(rng));
  }
  return WeightBundle(std::move(tensors));
}

WeightBundle WeightBundle::zeros(std::size_t features, std::size_t hidden, std::size_t mlp_width) {
  return WeightBundle(make_tensors(features, hidden, mlp_width));
}

std::vector<double> linear(const NamedTensor& weight, const NamedTensor& bias, std::span<const double> x) {
  const std::size_t rows = weight.dim(0);
  const std::size_t cols = weight.dim(1);
  if (x.size() != cols) throw std::invalid_argument("linear: input size mismatch");
  std::vector<double> y(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = bias.values[r];
    const float* row = weight.values.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += static_cast<double>(row[c]) * x[c];
    y[r] = acc;
  }
  return y;
}

std::vector<double> gru_cell(const WeightBundle& w, std::span<const double> input,
                             std::span<const double> hidden) {
  const std::size_t h = w.hidden_size();
  if (input.size() != WeightBundle::kGruInput || hidden.size() != h) {
    throw std::invalid_argument("gru_cell: input or hidden size mismatch");
  }
  const auto gi = linear(w.at("gru.weight_ih"), w.at("gru.bias_ih"), input);
  const auto gh = linear(w.at("gru.weight_hh"), w.at("gru.bias_hh"), hidden);
  std::vector<double> next(h);
  for (std::size_t j = 0; j < h; ++j) {
    const double r = sigmoid(gi[j] + gh[j]);
    const double z = sigmoid(gi[h + j] + gh[h + j]);
    const double n = std::tanh(gi[2 * h + j] + r * gh[2 * h + j]);
    next[j] = (1.0 - z) * n + z * hidden[j];
  }
  return next;
}

}  // namespace sdcdrive
