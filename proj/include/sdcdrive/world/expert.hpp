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

#include <optional>
#include <vector>

#include "sdcdrive/common/controls.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

struct ExpertParams {
  double cruise_speed = 6.0;
  double stop_sign_speed = 3.0;
  double stop_sign_slow_zone = 15.0;
  double lookahead_min = 4.0;
  double lookahead_gain = 0.5;  // s
  double lookahead_max = 10.0;
  double speed_gain = 1.0;      // 1/s
  double overspeed_brake = 1.5;  // m/s above target before braking
  double comfort_decel = 5.0;
  double stop_margin = 1.5;      // m before the stop line
  double envelope_length = 12.0;
  double envelope_width = 3.5;   // lane width
  double sensing_range = 40.0;
};

enum class Hazard { kNone, kRouteEnd, kTrafficLight, kStopSign, kActor, kOverspeed };

struct ExpertDecision {
  VehicularControls controls;
  Hazard hazard = Hazard::kNone;
  double target_speed = 0.0;

  // True when the expert intends to hold the vehicle still.
  bool stopping() const { return hazard != Hazard::kNone && hazard != Hazard::kOverspeed; }
};

// A traffic-light stop line crossed by the route ahead of the ego.
struct StopLineAhead {
  std::size_t light = 0;
  double distance_from_front = 0.0;  // along the route, negative once passed
  LightColor color = LightColor::kGreen;
};

std::vector<StopLineAhead> stop_lines_ahead(const WorldState& state, const RouteSpec& route,
                                            double range);

// Arc length along the route where it first enters a stop-sign zone, searched
// from the ego's progress.
std::optional<double> stop_sign_ahead(const WorldState& state, const RouteSpec& route, std::size_t sign,
                                      double range);

// Supervision bits: 1 when a red light facing the ego (its stop line is on
// the route ahead within range) or a stop sign appears, else 0.
bool traffic_light_bit(const WorldState& state, const RouteSpec& route, double range = 40.0);
bool stop_sign_bit(const WorldState& state, const RouteSpec& route, double range = 40.0);

// Box ahead of the front bumper in which any actor triggers an emergency stop.
Polygon safety_envelope(const EgoState& ego, const ExpertParams& params);

ExpertDecision expert_decide(const WorldState& state, const RouteSpec& route,
                             const ExpertParams& params = {});

// Privileged autopilot: lane-centre pure pursuit with rule-based braking.
VehicularControls expert_autopilot(const WorldState& state, const RouteSpec& route,
                                   const ExpertParams& params = {});

}  // namespace sdcdrive
