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

// Small hand-built maps and worlds for tests.

#include <memory>

#include "sdcdrive/world/world.hpp"

namespace sdcdrive::testing {

// Straight road along +y from y = -20 to y = length + 20, 10 m wide,
// centred on x = 0. No obstacles.
std::shared_ptr<WorldMap> straight_map(double length);

// Route along the straight map from (0, 0) to (0, length) with goals every 20 m.
std::shared_ptr<const RouteSpec> straight_route(double length);

// Map with one signalised stop line across the straight road at y = line_y.
std::shared_ptr<WorldMap> signal_map(double length, double line_y);

// Finalises and freezes a map.
std::shared_ptr<const WorldMap> freeze(std::shared_ptr<WorldMap> map);

WorldState make_straight_world(double length, ScenarioKind kind = ScenarioKind::k1WN);

}  // namespace sdcdrive::testing
