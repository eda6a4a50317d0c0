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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdcdrive/common/grid.hpp"

namespace sdcdrive {

// Weather as sensor corruption: Gaussian depth noise, per-pixel label flips
// to class 0, and depth dropouts that read as max range.
struct WeatherPreset {
  std::string name;
  double depth_sigma = 0.0;  // m
  double flip_prob = 0.0;
  double dropout_prob = 0.0;

  void validate() const;
};

// The fourteen presets, ClearNoon first.
std::span<const WeatherPreset> weather_presets();
const WeatherPreset& weather_preset(std::string_view name);
std::vector<std::string> weather_names();

void apply_weather(DepthMap& depth, SemanticImage& semantic, const WeatherPreset& preset, std::uint64_t seed);

}  // namespace sdcdrive
