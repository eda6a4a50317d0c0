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
#include <span>
#include <vector>

#include "sdcdrive/control/nn.hpp"
#include "sdcdrive/control/transform.hpp"
#include "sdcdrive/world/route.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

inline constexpr std::size_t kNumWaypoints = 3;
using Waypoints = std::array<LocalPoint, kNumWaypoints>;

struct WaypointDelta {
  double dx = 0.0;
  double dy = 0.0;
};

struct WaypointPrediction {
  Waypoints waypoints;
  std::array<WaypointDelta, kNumWaypoints> deltas;
  std::vector<double> latent;  // final hidden state biased by the TL/SS encoding
};

// Three-step GRU decoding. The hidden state starts at reduce(features); each
// step feeds (current waypoint, route point, speed), biases the new hidden
// state with the TL/SS encoding and reads a waypoint delta from it. The
// unbiased hidden state is what carries into the next step.
WaypointPrediction predict_waypoints(std::span<const double> features, LocalPoint route, double speed,
                                     double tl, double ss, const WeightBundle& weights);

struct OracleWaypointParams {
  std::array<double, kNumWaypoints> spacing{2.0, 4.0, 6.0};  // arc length ahead, m
};

// Network-free waypoints: points on the dense reference path at fixed arc
// gaps past the ego's route progress, in the ego frame. Past the end of the
// path the terminal point repeats.
Waypoints oracle_waypoints(const WorldState& state, const RouteSpec& route,
                           const OracleWaypointParams& params = {});

}  // namespace sdcdrive
