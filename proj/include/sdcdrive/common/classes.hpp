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

#include <array>
#include <cstdint>
#include <string_view>

#include "sdcdrive/common/grid.hpp"

namespace sdcdrive {

inline constexpr int kNumClasses = 23;

// Semantic vocabulary shared by the renderer, the BEV map and the metrics.
enum class SemanticClass : std::uint8_t {
  kUnlabeled = 0,
  kBuilding = 1,
  kFence = 2,
  kOther = 3,
  kPedestrian = 4,
  kPole = 5,
  kRoadLane = 6,
  kRoad = 7,
  kSidewalk = 8,
  kVegetation = 9,
  kOtherVehicles = 10,
  kWall = 11,
  kTrafficSign = 12,
  kSky = 13,
  kGround = 14,
  kBridge = 15,
  kRailTrack = 16,
  kGuardRail = 17,
  kTrafficLight = 18,
  kStaticObject = 19,
  kDynamicObject = 20,
  kWater = 21,
  kTerrain = 22,
};

constexpr std::uint8_t class_id(SemanticClass c) { return static_cast<std::uint8_t>(c); }
constexpr bool is_valid_class(int id) { return id >= 0 && id < kNumClasses; }

std::string_view class_name(int id);

// Display color for each class (CARLA-like palette).
Rgb class_color(int id);

}  // namespace sdcdrive
