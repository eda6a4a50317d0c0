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

#include "sdcdrive/world/expert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sdcdrive/control/transform.hpp"

namespace sdcdrive {
namespace {

constexpr double kStoppedSpeed = 0.1;
constexpr double kRouteEndTolerance = 0.5;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double front_offset(const EgoState& ego) { return ego.vehicle.length - ego.vehicle.rear_overhang; }

}  // namespace

std::vector<StopLineAhead> stop_lines_ahead(const WorldState& state, const RouteSpec& route,
                                            double range) {
  std::vector<StopLineAhead> out;
  const Polyline& path = route.path();
  const auto& pts = path.points();
  const double s_front = state.route_progress + front_offset(state.ego);
  const double s_lo = s_front - 5.0;
  const double s_hi = s_front + range;
  for (std::size_t li = 0; li < state.map->lights.size(); ++li) {
    const Segment& line = state.map->lights[li].stop_line;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (path.arc_at(i + 1) < s_lo) continue;
      if (path.arc_at(i) > s_hi) break;
      const auto u = segment_crossing({pts[i], pts[i + 1]}, line);
      if (!u) continue;
      const double s = path.arc_at(i) + *u * (path.arc_at(i + 1) - path.arc_at(i));
      out.push_back({li, s - s_front, light_color(state, li)});
      break;
    }
  }
  return out;
}

std::optional<double> stop_sign_ahead(const WorldState& state, const RouteSpec& route, std::size_t sign,
                                      double range) {
  const Polygon& zone = state.map->stop_signs.at(sign).trigger_zone;
  const double s0 = state.route_progress;
  for (double s = s0; s <= std::min(s0 + range, route.length()); s += 0.5) {
    if (point_in_polygon(route.path().point_at(s), zone)) return s;
  }
  return std::nullopt;
}

bool traffic_light_bit(const WorldState& state, const RouteSpec& route, double range) {
  for (const auto& line : stop_lines_ahead(state, route, range)) {
    if (line.color == LightColor::kRed && line.distance_from_front >= 0.0) return true;
  }
  return false;
}

bool stop_sign_bit(const WorldState& state, const RouteSpec& route, double range) {
  for (std::size_t i = 0; i < state.map->stop_signs.size(); ++i) {
    if (stop_sign_ahead(state, route, i, range)) return true;
  }
  return false;
}

Polygon safety_envelope(const EgoState& ego, const ExpertParams& params) {
  const Vec2 fwd = forward_vector(ego.pose.heading_deg);
  const Vec2 center = ego.front() + fwd * (0.5 * params.envelope_length);
  return oriented_box(center, fwd, params.envelope_length, params.envelope_width);
}

ExpertDecision expert_decide(const WorldState& state, const RouteSpec& route, const ExpertParams& params) {
  const EgoState& ego = state.ego;
  const double v = ego.speed;
  ExpertDecision out;

  if (state.route_progress >= route.length() - kRouteEndTolerance) {
    out.controls = VehicularControls::full_stop();
    out.hazard = Hazard::kRouteEnd;
    return out;
  }

  // Pure pursuit from the rear axle toward a point ahead on the reference path.
  const double lookahead =
      std::clamp(params.lookahead_min + params.lookahead_gain * v, params.lookahead_min, params.lookahead_max);
  const Vec2 aim = route.path().point_at(state.route_progress + lookahead);
  const LocalPoint local = global_to_local(aim, ego.pose);
  const double dist2 = local.x * local.x + local.y * local.y;
  double steering = 0.0;
  if (dist2 > 1e-9) {
    const double delta = std::atan2(2.0 * ego.vehicle.wheelbase * local.x, dist2);
    steering = std::clamp(delta * kRadToDeg / ego.vehicle.max_steer_deg, -1.0, 1.0);
  }

  double target = params.cruise_speed;
  Hazard hazard = Hazard::kNone;

  for (const auto& line : stop_lines_ahead(state, route, params.sensing_range)) {
    if (line.color == LightColor::kGreen || line.distance_from_front < 0.0) continue;
    const double brake_distance = v * v / (2.0 * params.comfort_decel) + params.stop_margin;
    if (line.color == LightColor::kYellow &&
        line.distance_from_front < v * v / (2.0 * ego.vehicle.brake_decel)) {
      continue;  // too late to stop for amber
    }
    if (line.distance_from_front <= brake_distance) hazard = Hazard::kTrafficLight;
  }

  for (std::size_t i = 0; i < state.map->stop_signs.size() && hazard == Hazard::kNone; ++i) {
    if (state.stop_status[i].satisfied) continue;
    if (state.stop_status[i].inside) {
      hazard = Hazard::kStopSign;
    } else if (const auto s = stop_sign_ahead(state, route, i, params.stop_sign_slow_zone)) {
      target = std::min(target, params.stop_sign_speed);
    }
  }

  if (hazard == Hazard::kNone) {
    const Polygon envelope = safety_envelope(ego, params);
    for (const auto& actor : state.actors) {
      if (polygons_intersect(actor.footprint(), envelope) ||
          polygons_intersect(actor.footprint_at(actor.position + actor.velocity * 0.5), envelope) ||
          polygons_intersect(actor.footprint_at(actor.position + actor.velocity * 1.0), envelope)) {
        hazard = Hazard::kActor;
        break;
      }
    }
  }

  out.target_speed = target;
  if (hazard != Hazard::kNone) {
    out.hazard = hazard;
    out.target_speed = 0.0;
    out.controls = {v < kStoppedSpeed ? 0.0 : steering, 0.0, 1.0};
    return out;
  }

  if (v > target + params.overspeed_brake) {
    out.hazard = Hazard::kOverspeed;
    out.controls = {steering, 0.0, 1.0};
    return out;
  }

  const double accel = ego.vehicle.drag * target + params.speed_gain * (target - v);
  const double throttle = std::clamp(kMaxThrottle * accel / ego.vehicle.max_accel, 0.0, kMaxThrottle);
  out.controls = {steering, throttle, 0.0};
  return out;
}

VehicularControls expert_autopilot(const WorldState& state, const RouteSpec& route,
                                   const ExpertParams& params) {
  return expert_decide(state, route, params).controls;
}

}  // namespace sdcdrive
