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

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "sdcdrive/world/route.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

// Map files are JSON with "schema": "sdcdrive.map/1". Regions (roads,
// sidewalks) are either {"polygon": [[x, y], ...]} or
// {"strip": {"centerline": [[x, y], ...], "width": w}}. Obstacles take a
// "footprint" polygon or an axis-aligned "box": {"min": [x, y], "max": [x, y]}.
// See data/maps for complete examples.
WorldMap parse_map(const std::string& text);
std::shared_ptr<const WorldMap> load_map(const std::filesystem::path& path);

// Route sets: "schema": "sdcdrive.routes/1", a set name, the map name they
// belong to, and named routes of sparse goal points.
struct RouteSet {
  std::string name;
  std::string map;
  std::vector<std::shared_ptr<const RouteSpec>> routes;
};
RouteSet parse_route_set(const std::string& text);
RouteSet load_route_set(const std::filesystem::path& path);

// Scenario files: "schema": "sdcdrive.scenario/1" with kind, weather, seed,
// dt and log_period; missing keys keep their defaults.
ScenarioConfig parse_scenario_config(const std::string& text);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace sdcdrive
