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

#include "sdcdrive/sensor/weather.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

#include "sdcdrive/common/classes.hpp"
#include "sdcdrive/sensor/depth_codec.hpp"

namespace sdcdrive {
namespace {

// Sunset and rain raise the noise; the numbers are a monotone ladder, not a
// photometric model.
const std::array<WeatherPreset, 14> kPresets = {{
    {"ClearNoon", 0.0, 0.0, 0.0},
    {"ClearSunset", 0.05, 0.005, 0.0},
    {"CloudyNoon", 0.05, 0.005, 0.0},
    {"CloudySunset", 0.1, 0.01, 0.0},
    {"WetNoon", 0.1, 0.01, 0.001},
    {"WetSunset", 0.15, 0.015, 0.001},
    {"MidRainyNoon", 0.3, 0.03, 0.005},
    {"MidRainySunset", 0.35, 0.04, 0.005},
    {"WetCloudyNoon", 0.15, 0.015, 0.002},
    {"WetCloudySunset", 0.2, 0.02, 0.002},
    {"HardRainNoon", 0.45, 0.05, 0.01},
    {"HardRainSunset", 0.5, 0.06, 0.01},
    {"SoftRainNoon", 0.2, 0.02, 0.003},
    {"SoftRainSunset", 0.25, 0.025, 0.003},
}};

}  // namespace

void WeatherPreset::validate() const {
  if (!(depth_sigma >= 0.0)) throw std::invalid_argument("weather depth sigma must be >= 0");
  for (double p : {flip_prob, dropout_prob}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("weather probabilities must lie in [0, 1]");
  }
}

std::span<const WeatherPreset> weather_presets() { return kPresets; }

const WeatherPreset& weather_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown weather preset: " + std::string(name));
}

std::vector<std::string> weather_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.push_back(p.name);
  return out;
}

void apply_weather(DepthMap& depth, SemanticImage& semantic, const WeatherPreset& preset, std::uint64_t seed) {
  preset.validate();
  if (depth.rows() != semantic.rows() || depth.cols() != semantic.cols()) {
    throw std::invalid_argument("apply_weather: depth and semantic sizes differ");
  }
  if (preset.depth_sigma == 0.0 && preset.flip_prob == 0.0 && preset.dropout_prob == 0.0) return;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, preset.depth_sigma > 0.0 ? preset.depth_sigma : 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto d = depth.data();
  auto s = semantic.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (preset.depth_sigma > 0.0) d[i] = std::clamp(d[i] + noise(rng), 0.0, kDepthRange);
    if (preset.dropout_prob > 0.0 && unit(rng) < preset.dropout_prob) d[i] = kDepthRange;
    if (preset.flip_prob > 0.0 && unit(rng) < preset.flip_prob) s[i] = class_id(SemanticClass::kUnlabeled);
  }
}

}  // namespace sdcdrive
