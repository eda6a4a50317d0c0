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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdcdrive/common/controls.hpp"
#include "sdcdrive/common/geometry.hpp"
#include "sdcdrive/world/route.hpp"

namespace sdcdrive {

// Frame convention. The planar world frame (x_g, y_g) is right-handed with z
// up. Headings are compass degrees in [-180, 180): heading 0 faces -x_g and
// heading grows counterclockwise, so the global-to-local transform is the
// transposed rotation by (90 + heading). At heading -90 the local frame
// (x_l right, y_l forward) coincides with the world frame.
struct Pose {
  double x_g = 0.0;
  double y_g = 0.0;
  double heading_deg = 0.0;

  Vec2 position() const { return {x_g, y_g}; }
};

double normalize_heading(double deg);
Vec2 forward_vector(double heading_deg);
Vec2 right_vector(double heading_deg);
double heading_of(Vec2 direction);

struct VehicleParams {
  double wheelbase = 2.7;
  double length = 4.5;
  double width = 2.0;
  double rear_overhang = 0.9;
  double max_steer_deg = 60.0;  // full lock at |steering| = 1
  double max_accel = 3.0;       // at throttle 0.75
  double brake_decel = 8.0;     // at brake 1
  double drag = 0.25;           // linear drag, 1/s
  double max_speed = 20.0;
};

/// Pose is the rear-axle reference point.
struct EgoState {
  Pose pose;
  double speed = 0.0;
  VehicleParams vehicle;
  VehicularControls applied;
  int clamp_events = 0;

  Vec2 center() const;
  Vec2 front() const;
  Polygon footprint() const;
};

enum class ActorKind { kPedestrian, kVehicle, kBicyclist };
std::string_view to_string(ActorKind k);
ActorKind parse_actor_kind(std::string_view s);

struct ActorDims {
  double length;
  double width;
  double height;
  std::uint8_t class_id;
};
ActorDims actor_dims(ActorKind k);

enum class NpcBehavior { kLawful, kAdversarialCross, kRunsDoubleGreen };
std::string_view to_string(NpcBehavior b);
NpcBehavior parse_npc_behavior(std::string_view s);

struct NpcTrigger {
  enum class Kind { kTime, kProximity };
  Kind kind = Kind::kTime;
  double time = 0.0;
  Vec2 point;          // proximity anchor
  double radius = 0.0;  // proximity radius, > 0
};

struct TimedPoint {
  double t = 0.0;  // seconds after the trigger fires
  Vec2 p;
};

struct NpcScript {
  std::string id;
  ActorKind kind = ActorKind::kPedestrian;
  std::vector<TimedPoint> path;
  NpcTrigger trigger;
  NpcBehavior behavior = NpcBehavior::kLawful;
  // Only for kRunsDoubleGreen.
  std::string intersection;
  double double_green_s = 0.0;

  bool adversarial() const { return behavior != NpcBehavior::kLawful; }
};

struct Obstacle {
  Polygon footprint;
  double height = 0.0;
  std::uint8_t class_id = 0;
};

// Two-approach signal controller; approach 1 runs half a cycle behind approach 0.
struct Intersection {
  std::string id;
  double green_s = 10.0;
  double yellow_s = 2.0;
  double all_red_s = 1.0;
  double offset_s = 0.0;
};

struct TrafficLight {
  std::string id;
  Vec2 position;
  Segment stop_line;
  std::string intersection;
  int approach = 0;
};

struct StopSign {
  std::string id;
  Vec2 position;
  Polygon trigger_zone;
};

struct Lane {
  std::string id;
  std::vector<Vec2> centerline;
};

struct WorldMap {
  std::string name;
  std::vector<Polygon> roads;
  std::vector<Polygon> sidewalks;
  std::vector<Lane> lanes;
  std::vector<Obstacle> obstacles;
  std::vector<Intersection> intersections;
  std::vector<TrafficLight> lights;
  std::vector<StopSign> stop_signs;
  std::vector<NpcScript> npcs;

  // Throws std::invalid_argument on a broken invariant; also builds the
  // bounding-box index used by on_road/on_sidewalk.
  void finalize();

  bool on_road(Vec2 p) const;
  bool on_sidewalk(Vec2 p) const;
  std::optional<std::size_t> intersection_index(std::string_view id) const;

  std::vector<Aabb> road_bounds;
  std::vector<Aabb> sidewalk_bounds;
};

enum class ScenarioKind { k1WN, k1WA, kAWN, kAWA };
std::string_view to_string(ScenarioKind k);
ScenarioKind parse_scenario_kind(std::string_view s);
inline bool is_adversarial(ScenarioKind k) { return k == ScenarioKind::k1WA || k == ScenarioKind::kAWA; }
inline bool is_all_weather(ScenarioKind k) { return k == ScenarioKind::kAWN || k == ScenarioKind::kAWA; }

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::k1WN;
  std::string weather = "ClearNoon";
  std::uint64_t seed = 0;
  double dt = 0.05;
  double log_period = 0.5;

  void validate() const;
  int steps_per_log() const;
};

enum class LightColor { kGreen, kYellow, kRed };
std::string_view to_string(LightColor c);

struct ActorState {
  ActorKind kind = ActorKind::kPedestrian;
  Vec2 position;
  Vec2 direction{0.0, 1.0};
  Vec2 velocity;
  bool fired = false;
  double fired_at = 0.0;

  Polygon footprint() const;
  Polygon footprint_at(Vec2 p) const;
};

struct DoubleGreenWindow {
  std::size_t intersection = 0;
  double start = 0.0;
  double end = 0.0;
};

struct StopSignStatus {
  bool inside = false;
  bool satisfied = false;
};

struct WorldState {
  std::shared_ptr<const WorldMap> map;
  ScenarioConfig scenario;
  std::shared_ptr<const RouteSpec> route;  // may be null

  double time = 0.0;
  std::int64_t step = 0;
  EgoState ego;
  double route_progress = 0.0;  // arc length along route->path()
  std::vector<ActorState> actors;  // parallel to map->npcs
  std::vector<DoubleGreenWindow> double_green;
  std::vector<StopSignStatus> stop_status;  // parallel to map->stop_signs
  int events_fired = 0;  // adversarial scripts only
};

// Ego placed at the first goal point, facing along the route.
WorldState make_world(std::shared_ptr<const WorldMap> map, ScenarioConfig scenario,
                      std::shared_ptr<const RouteSpec> route, VehicleParams vehicle = {});

// Advances the world by dt: clamps and applies controls through an exact-arc
// kinematic bicycle model, fires eligible NPC triggers, moves NPCs along their
// scripts and updates stop-sign bookkeeping and route progress.
WorldState step_world(const WorldState& state, const VehicularControls& controls, double dt);

bool trigger_condition_met(const WorldState& state, std::size_t npc);

// Fires NPC script `npc`. A consumed event is a no-op.
WorldState trigger_adversarial_event(const WorldState& state, std::size_t npc);

LightColor light_color(const WorldState& state, std::size_t light);

// Scripted position of an NPC tau seconds after firing.
Vec2 scripted_position(const NpcScript& script, double tau);

}  // namespace sdcdrive
