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

#include "sdcdrive/common/classes.hpp"

namespace sdcdrive {
namespace {

constexpr std::array<std::string_view, kNumClasses> kNames = {
    "Unlabeled",     "Building",     "Fence",          "Other",      "Pedestrian",
    "Pole",          "RoadLane",     "Road",           "Sidewalk",   "Vegetation",
    "OtherVehicles", "Wall",         "TrafficSign",    "Sky",        "Ground",
    "Bridge",        "RailTrack",    "GuardRail",      "TrafficLight", "StaticObject",
    "DynamicObject", "Water",        "Terrain"};

constexpr std::array<Rgb, kNumClasses> kPalette = {{
    {0, 0, 0},       {70, 70, 70},    {100, 40, 40},  {55, 90, 80},    {220, 20, 60},
    {153, 153, 153}, {157, 234, 50},  {128, 64, 128}, {244, 35, 232},  {107, 142, 35},
    {0, 0, 142},     {102, 102, 156}, {220, 220, 0},  {70, 130, 180},  {81, 0, 81},
    {150, 100, 100}, {230, 150, 140}, {180, 165, 180}, {250, 170, 30}, {110, 190, 160},
    {170, 120, 50},  {45, 60, 150},   {145, 170, 100},
}};

}  // namespace

std::string_view class_name(int id) {
  return is_valid_class(id) ? kNames[static_cast<std::size_t>(id)] : std::string_view{"?"};
}

Rgb class_color(int id) {
  return is_valid_class(id) ? kPalette[static_cast<std::size_t>(id)] : Rgb{255, 0, 255};
}

}  // namespace sdcdrive
