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

#include "sdcdrive/world/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdcdrive {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kStoppedSpeed = 0.1;

// Route progress may only be searched a short way back and ahead of the
// previous value so self-crossing routes do not jump.
constexpr double kProgressBacktrack = 2.0;
constexpr double kProgressLookahead = 10.0;

}  // namespace

double normalize_heading(double deg) {
  double h = std::fmod(deg + 180.0, 360.0);
  if (h < 0.0) h += 360.0;
  return h - 180.0;
}

Vec2 forward_vector(double heading_deg) {
  const double h = heading_deg * kDegToRad;
  return {-std::cos(h), -std::sin(h)};
}

Vec2 right_vector(double heading_deg) {
  const double h = heading_deg * kDegToRad;
  return {-std::sin(h), std::cos(h)};
}

double heading_of(Vec2 direction) {
  return normalize_heading(std::atan2(-direction.y, -direction.x) / kDegToRad);
}

Vec2 EgoState::center() const {
  const double offset = 0.5 * vehicle.length - vehicle.rear_overhang;
  return pose.position() + forward_vector(pose.heading_deg) * offset;
}

Vec2 EgoState::front() const {
  const double offset = vehicle.length - vehicle.rear_overhang;
  return pose.position() + forward_vector(pose.heading_deg) * offset;
}

Polygon EgoState::footprint() const {
  return oriented_box(center(), forward_vector(pose.heading_deg), vehicle.length, vehicle.width);
}

std::string_view to_string(ActorKind k) {
  switch (k) {
    case ActorKind::kPedestrian: return "pedestrian";
    case ActorKind::kVehicle: return "vehicle";
    case ActorKind::kBicyclist: return "bicyclist";
  }
  return "?";
}

ActorKind parse_actor_kind(std::string_view s) {
  if (s == "pedestrian") return ActorKind::kPedestrian;
  if (s == "vehicle") return ActorKind::kVehicle;
  if (s == "bicyclist") return ActorKind::kBicyclist;
  throw std::invalid_argument("unknown actor kind: " + std::string(s));
}

ActorDims actor_dims(ActorKind k) {
  switch (k) {
    case ActorKind::kPedestrian: return {0.6, 0.6, 1.8, 4};
    case ActorKind::kVehicle: return {4.5, 2.0, 1.5, 10};
    case ActorKind::kBicyclist: return {1.8, 0.7, 1.7, 10};
  }
  throw std::invalid_argument("unknown actor kind");
}

std::string_view to_string(NpcBehavior b) {
  switch (b) {
    case NpcBehavior::kLawful: return "lawful";
    case NpcBehavior::kAdversarialCross: return "adversarial-cross";
    case NpcBehavior::kRunsDoubleGreen: return "runs-double-green";
  }
  return "?";
}

NpcBehavior parse_npc_behavior(std::string_view s) {
  if (s == "lawful") return NpcBehavior::kLawful;
  if (s == "adversarial-cross") return NpcBehavior::kAdversarialCross;
  if (s == "runs-double-green") return NpcBehavior::kRunsDoubleGreen;
  throw std::invalid_argument("unknown npc behavior: " + std::string(s));
}

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::k1WN: return "1W-N";
    case ScenarioKind::k1WA: return "1W-A";
    case ScenarioKind::kAWN: return "AW-N";
    case ScenarioKind::kAWA: return "AW-A";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(std::string_view s) {
  if (s == "1W-N") return ScenarioKind::k1WN;
  if (s == "1W-A") return ScenarioKind::k1WA;
  if (s == "AW-N") return ScenarioKind::kAWN;
  if (s == "AW-A") return ScenarioKind::kAWA;
  throw std::invalid_argument("unknown scenario kind: " + std::string(s));
}

std::string_view to_string(LightColor c) {
  switch (c) {
    case LightColor::kGreen: return "green";
    case LightColor::kYellow: return "yellow";
    case LightColor::kRed: return "red";
  }
  return "?";
}

void ScenarioConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(log_period > 0.0)) throw std::invalid_argument("log period must be > 0");
  const double ratio = log_period / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw std::invalid_argument("log period must be an integer multiple of dt");
  }
}

int ScenarioConfig::steps_per_log() const { return static_cast<int>(std::lround(log_period / dt)); }

void WorldMap::finalize() {
  road_bounds.clear();
  sidewalk_bounds.clear();
  for (const auto& r : roads) {
    if (r.size() < 3) throw std::invalid_argument("road polygon needs >= 3 vertices");
    road_bounds.push_back(bounds(r));
  }
  for (const auto& s : sidewalks) {
    if (s.size() < 3) throw std::invalid_argument("sidewalk polygon needs >= 3 vertices");
    sidewalk_bounds.push_back(bounds(s));
  }
  for (const auto& lane : lanes) {
    for (const auto& p : lane.centerline) {
      if (!on_road(p)) throw std::invalid_argument("lane '" + lane.id + "' leaves the road");
    }
  }
  for (const auto& o : obstacles) {
    if (o.footprint.size() < 3) throw std::invalid_argument("obstacle footprint needs >= 3 vertices");
    if (!(o.height > 0.0)) throw std::invalid_argument("obstacle height must be > 0");
    if (o.class_id >= 23) throw std::invalid_argument("obstacle class id out of range");
  }
  for (const auto& l : lights) {
    if (!intersection_index(l.intersection)) {
      throw std::invalid_argument("light '" + l.id + "' references unknown intersection");
    }
    if (l.approach != 0 && l.approach != 1) throw std::invalid_argument("light approach must be 0 or 1");
    if (l.stop_line.a == l.stop_line.b) throw std::invalid_argument("degenerate stop line");
  }
  for (const auto& i : intersections) {
    if (!(i.green_s > 0.0) || i.yellow_s < 0.0 || i.all_red_s < 0.0) {
      throw std::invalid_argument("bad phase schedule for intersection '" + i.id + "'");
    }
  }
  for (const auto& s : stop_signs) {
    if (s.trigger_zone.size() < 3) throw std::invalid_argument("stop sign zone needs >= 3 vertices");
  }
  for (const auto& n : npcs) {
    if (n.path.size() < 2) throw std::invalid_argument("npc '" + n.id + "' path needs >= 2 points");
    for (std::size_t i = 1; i < n.path.size(); ++i) {
      if (!(n.path[i].t > n.path[i - 1].t)) {
        throw std::invalid_argument("npc '" + n.id + "' path times must increase");
      }
    }
    if (n.trigger.kind == NpcTrigger::Kind::kProximity && !(n.trigger.radius > 0.0)) {
      throw std::invalid_argument("npc '" + n.id + "' trigger radius must be > 0");
    }
    if (n.behavior == NpcBehavior::kRunsDoubleGreen) {
      if (!intersection_index(n.intersection)) {
        throw std::invalid_argument("npc '" + n.id + "' references unknown intersection");
      }
      if (!(n.double_green_s > 0.0)) throw std::invalid_argument("double-green duration must be > 0");
    }
  }
}

bool WorldMap::on_road(Vec2 p) const {
  for (std::size_t i = 0; i < roads.size(); ++i) {
    if (i < road_bounds.size() && !road_bounds[i].contains(p)) continue;
    if (point_in_polygon(p, roads[i])) return true;
  }
  return false;
}

bool WorldMap::on_sidewalk(Vec2 p) const {
  for (std::size_t i = 0; i < sidewalks.size(); ++i) {
    if (i < sidewalk_bounds.size() && !sidewalk_bounds[i].contains(p)) continue;
    if (point_in_polygon(p, sidewalks[i])) return true;
  }
  return false;
}

std::optional<std::size_t> WorldMap::intersection_index(std::string_view id) const {
  for (std::size_t i = 0; i < intersections.size(); ++i) {
    if (intersections[i].id == id) return i;
  }
  return std::nullopt;
}

Polygon ActorState::footprint_at(Vec2 p) const {
  const ActorDims d = actor_dims(kind);
  return oriented_box(p, direction, d.length, d.width);
}

Polygon ActorState::footprint() const { return footprint_at(position); }

Vec2 scripted_position(const NpcScript& script, double tau) {
  const auto& path = script.path;
  if (tau <= path.front().t) return path.front().p;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (tau < path[i].t) {
      const double u = (tau - path[i - 1].t) / (path[i].t - path[i - 1].t);
      return path[i - 1].p + (path[i].p - path[i - 1].p) * u;
    }
  }
  return path.back().p;
}

namespace {

void place_actor(ActorState& actor, const NpcScript& script, double time) {
  const double tau = actor.fired ? time - actor.fired_at : script.path.front().t;
  actor.position = scripted_position(script, tau);
  // Direction follows the active path segment; parked actors face their first leg.
  std::size_t seg = 1;
  while (seg + 1 < script.path.size() && tau >= script.path[seg].t) ++seg;
  const Vec2 d = script.path[seg].p - script.path[seg - 1].p;
  if (d.norm() > 0.0) actor.direction = d * (1.0 / d.norm());
  const bool moving = actor.fired && tau >= script.path.front().t && tau < script.path.back().t;
  actor.velocity = moving ? d * (1.0 / (script.path[seg].t - script.path[seg - 1].t)) : Vec2{};
}

void advance_ego(EgoState& ego, const VehicularControls& raw, double dt) {
  const VehicularControls c = raw.clamped();
  if (!(c == raw)) ++ego.clamp_events;
  ego.applied = c;
  const VehicleParams& v = ego.vehicle;

  const double accel = v.max_accel * (c.throttle / kMaxThrottle) - v.brake_decel * c.brake - v.drag * ego.speed;
  const double unclamped = ego.speed + accel * dt;
  double distance;
  double new_speed;
  if (unclamped <= 0.0) {
    distance = accel < 0.0 ? ego.speed * ego.speed / (-2.0 * accel) : 0.0;
    new_speed = 0.0;
  } else if (unclamped > v.max_speed) {
    new_speed = v.max_speed;
    const double t_reach = accel > 0.0 ? (v.max_speed - ego.speed) / accel : 0.0;
    distance = 0.5 * (ego.speed + v.max_speed) * t_reach + v.max_speed * (dt - t_reach);
  } else {
    new_speed = unclamped;
    distance = 0.5 * (ego.speed + new_speed) * dt;
  }

  // Positive steering turns right, i.e. clockwise in the world frame.
  const double curvature = std::tan(c.steering * v.max_steer_deg * kDegToRad) / v.wheelbase;
  const double ccw_curvature = -curvature;
  const double phi0 = (ego.pose.heading_deg + 180.0) * kDegToRad;  // math angle of forward
  Vec2 p = ego.pose.position();
  double phi1 = phi0;
  if (distance > 0.0) {
    if (std::abs(ccw_curvature) < 1e-12) {
      p += Vec2{std::cos(phi0), std::sin(phi0)} * distance;
    } else {
      phi1 = phi0 + ccw_curvature * distance;
      p += Vec2{std::sin(phi1) - std::sin(phi0), std::cos(phi0) - std::cos(phi1)} * (1.0 / ccw_curvature);
    }
  }
  ego.pose.x_g = p.x;
  ego.pose.y_g = p.y;
  ego.pose.heading_deg = normalize_heading(phi1 / kDegToRad - 180.0);
  ego.speed = new_speed;
}

}  // namespace

WorldState make_world(std::shared_ptr<const WorldMap> map, ScenarioConfig scenario,
                      std::shared_ptr<const RouteSpec> route, VehicleParams vehicle) {
  if (!map) throw std::invalid_argument("world needs a map");
  scenario.validate();
  if (!(vehicle.wheelbase > 0.0)) throw std::invalid_argument("wheelbase must be > 0");
  WorldState s;
  s.map = std::move(map);
  s.scenario = std::move(scenario);
  s.route = std::move(route);
  s.ego.vehicle = vehicle;
  if (s.route) {
    const Vec2 start = s.route->goals().front();
    s.ego.pose = {start.x, start.y, heading_of(s.route->path().tangent_at(0.0))};
  }
  s.actors.resize(s.map->npcs.size());
  for (std::size_t i = 0; i < s.actors.size(); ++i) {
    s.actors[i].kind = s.map->npcs[i].kind;
    place_actor(s.actors[i], s.map->npcs[i], 0.0);
  }
  s.stop_status.resize(s.map->stop_signs.size());
  return s;
}

bool trigger_condition_met(const WorldState& state, std::size_t npc) {
  const NpcTrigger& trig = state.map->npcs.at(npc).trigger;
  switch (trig.kind) {
    case NpcTrigger::Kind::kTime: return state.time >= trig.time;
    case NpcTrigger::Kind::kProximity:
      return distance(state.ego.pose.position(), trig.point) <= trig.radius;
  }
  return false;
}

WorldState trigger_adversarial_event(const WorldState& state, std::size_t npc) {
  if (state.actors.at(npc).fired) return state;
  WorldState next = state;
  const NpcScript& script = state.map->npcs[npc];
  ActorState& actor = next.actors[npc];
  actor.fired = true;
  actor.fired_at = state.time;
  if (script.adversarial()) ++next.events_fired;
  if (script.behavior == NpcBehavior::kRunsDoubleGreen) {
    const auto idx = state.map->intersection_index(script.intersection);
    next.double_green.push_back({*idx, state.time, state.time + script.double_green_s});
  }
  return next;
}

LightColor light_color(const WorldState& state, std::size_t light) {
  const TrafficLight& tl = state.map->lights.at(light);
  const std::size_t idx = *state.map->intersection_index(tl.intersection);
  for (const auto& w : state.double_green) {
    if (w.intersection == idx && state.time >= w.start && state.time < w.end) return LightColor::kGreen;
  }
  const Intersection& ix = state.map->intersections[idx];
  const double half = ix.green_s + ix.yellow_s + ix.all_red_s;
  const double cycle = 2.0 * half;
  double phase = std::fmod(state.time + ix.offset_s + (tl.approach == 1 ? half : 0.0), cycle);
  if (phase < 0.0) phase += cycle;
  if (phase < ix.green_s) return LightColor::kGreen;
  if (phase < ix.green_s + ix.yellow_s) return LightColor::kYellow;
  return LightColor::kRed;
}

WorldState step_world(const WorldState& state, const VehicularControls& controls, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  WorldState next = state;

  // Triggers are evaluated against the pre-step state.
  const bool adversarial_allowed = is_adversarial(state.scenario.kind);
  for (std::size_t i = 0; i < state.actors.size(); ++i) {
    if (next.actors[i].fired) continue;
    if (state.map->npcs[i].adversarial() && !adversarial_allowed) continue;
    if (trigger_condition_met(state, i)) next = trigger_adversarial_event(next, i);
  }

  advance_ego(next.ego, controls, dt);
  ++next.step;
  // At the configured rate the clock is step * dt, so log boundaries land on
  // exact multiples instead of accumulating rounding.
  next.time = dt == state.scenario.dt ? static_cast<double>(next.step) * dt : state.time + dt;

  for (std::size_t i = 0; i < next.actors.size(); ++i) {
    place_actor(next.actors[i], next.map->npcs[i], next.time);
  }

  const Vec2 ego_pos = next.ego.pose.position();
  for (std::size_t i = 0; i < next.stop_status.size(); ++i) {
    StopSignStatus& st = next.stop_status[i];
    st.inside = point_in_polygon(ego_pos, next.map->stop_signs[i].trigger_zone);
    if (!st.inside) {
      st.satisfied = false;
    } else if (next.ego.speed < kStoppedSpeed) {
      st.satisfied = true;
    }
  }

  if (next.route) {
    const auto proj = next.route->path().project(ego_pos, next.route_progress - kProgressBacktrack,
                                                 next.route_progress + kProgressLookahead);
    next.route_progress = std::max(next.route_progress, proj.s);
  }
  return next;
}

}  // namespace sdcdrive
