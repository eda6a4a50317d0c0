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

#include "sdcdrive/scoring/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sdcdrive {

std::string_view to_string(InfractionType t) {
  switch (t) {
    case InfractionType::kPedestrian: return "collision_pedestrian";
    case InfractionType::kVehicle: return "collision_vehicle";
    case InfractionType::kStatic: return "collision_static";
    case InfractionType::kRedLight: return "red_light";
    case InfractionType::kStopSign: return "stop_sign";
  }
  return "?";
}

void PenaltyTable::validate() const {
  for (double p : penalty) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("penalties must lie in (0, 1]");
  }
}

void InfractionLedger::add(InfractionType t, double time, std::string subject) {
  ++counts[static_cast<std::size_t>(t)];
  events.push_back({t, time, std::move(subject)});
}

bool InfractionLedger::empty() const {
  return std::all_of(counts.begin(), counts.end(), [](int c) { return c == 0; });
}

InfractionLedger InfractionLedger::merged(const InfractionLedger& other) const {
  InfractionLedger out = *this;
  for (std::size_t i = 0; i < kNumInfractionTypes; ++i) out.counts[i] += other.counts[i];
  out.offroad_m += other.offroad_m;
  out.events.insert(out.events.end(), other.events.begin(), other.events.end());
  return out;
}

namespace {

struct ContactState {
  bool touching = false;
  bool ever = false;
  double last = 0.0;
};

InfractionType collision_type(ActorKind k) {
  return k == ActorKind::kPedestrian ? InfractionType::kPedestrian : InfractionType::kVehicle;
}

void track_contact(ContactState& st, bool touching, double t, InfractionType type, const std::string& subject,
                   InfractionLedger& ledger) {
  if (touching) {
    if (!st.touching && (!st.ever || t - st.last > kCollisionMergeWindow)) ledger.add(type, t, subject);
    st.touching = true;
    st.ever = true;
    st.last = t;
  } else {
    st.touching = false;
  }
}

}  // namespace

InfractionLedger detect_infractions(const Trace& trace, const WorldMap& map) {
  InfractionLedger ledger;
  std::map<std::size_t, ContactState> actor_contacts;
  std::vector<ContactState> obstacle_contacts(map.obstacles.size());
  std::vector<StopSignStatus> signs(map.stop_signs.size());
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    const TraceSample& s = trace.samples[k];
    if (k > 0 && trace.samples[k - 1].t > s.t) throw std::invalid_argument("trace is not time-ordered");
    const Aabb ego_box = bounds(s.footprint);

    for (const ActorSnapshot& a : s.actors) {
      const bool touching = ego_box.overlaps(bounds(a.footprint)) && polygons_intersect(s.footprint, a.footprint);
      const std::string subject = a.id < map.npcs.size() ? map.npcs[a.id].id : "actor" + std::to_string(a.id);
      track_contact(actor_contacts[a.id], touching, s.t, collision_type(a.kind), subject, ledger);
    }
    for (std::size_t i = 0; i < map.obstacles.size(); ++i) {
      const Polygon& fp = map.obstacles[i].footprint;
      const bool touching = ego_box.overlaps(bounds(fp)) && polygons_intersect(s.footprint, fp);
      track_contact(obstacle_contacts[i], touching, s.t, InfractionType::kStatic, "obstacle" + std::to_string(i),
                    ledger);
    }

    if (k > 0) {
      const TraceSample& prev = trace.samples[k - 1];
      const Segment moved{prev.front, s.front};
      for (std::size_t li = 0; li < map.lights.size() && li < prev.lights.size(); ++li) {
        if (prev.lights[li] != LightColor::kRed) continue;
        const auto u = segment_crossing(moved, map.lights[li].stop_line);
        // A front bumper resting exactly on the line counts on the step that
        // reached it, not again on the step that leaves it.
        if (u && *u > 0.0) ledger.add(InfractionType::kRedLight, s.t, map.lights[li].id);
      }
      if (!map.on_road(s.center)) ledger.offroad_m += distance(prev.center, s.center);
    }

    for (std::size_t i = 0; i < signs.size(); ++i) {
      const bool inside = point_in_polygon(s.pose.position(), map.stop_signs[i].trigger_zone);
      StopSignStatus& st = signs[i];
      if (inside) {
        if (s.speed < kStopSignSpeed) st.satisfied = true;
      } else if (st.inside) {
        if (!st.satisfied) ledger.add(InfractionType::kStopSign, s.t, map.stop_signs[i].id);
        st.satisfied = false;
      }
      st.inside = inside;
    }
  }
  return ledger;
}

double infraction_penalty(const InfractionLedger& ledger, const PenaltyTable& table) {
  table.validate();
  double ip = 1.0;
  for (std::size_t i = 0; i < kNumInfractionTypes; ++i) {
    if (ledger.counts[i] < 0) throw std::invalid_argument("negative infraction count");
    ip *= std::pow(table.penalty[i], ledger.counts[i]);
  }
  return ip;
}

std::string_view to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::kRunning: return "running";
    case TerminationReason::kCompleted: return "completed";
    case TerminationReason::kDeviation: return "deviation";
    case TerminationReason::kTimeout: return "timeout";
    case TerminationReason::kBlocked: return "blocked";
  }
  return "?";
}

TerminationReason parse_termination_reason(std::string_view s) {
  for (auto r : {TerminationReason::kRunning, TerminationReason::kCompleted, TerminationReason::kDeviation,
                 TerminationReason::kTimeout, TerminationReason::kBlocked}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown termination reason: " + std::string(s));
}

double ProgressTracker::update(Vec2 p) {
  const auto proj = route_->path().project(p, s_ - kBacktrack, s_ + kLookahead);
  s_ = std::max(s_, proj.s);
  return s_;
}

TerminationMonitor::TerminationMonitor(const RouteSpec& route, TerminationParams params)
    : route_(&route), params_(params), progress_(route) {}

TerminationReason TerminationMonitor::update(const TraceSample& sample) {
  const Vec2 p = sample.pose.position();
  const double s = progress_.update(p);
  if (s >= route_->length() - params_.completion_tolerance) return TerminationReason::kCompleted;
  if (route_->deviation(p) > params_.max_deviation) return TerminationReason::kDeviation;

  window_.emplace_back(sample.t, p);
  while (window_.size() > 1 && window_[1].first <= sample.t - params_.idle_window) window_.pop_front();
  const bool idle = distance(window_.front().second, p) < params_.idle_displacement;
  if (!idle) {
    idle_since_.reset();
  } else if (!idle_since_) {
    idle_since_ = sample.t;
  }
  if (idle_since_ && sample.t - *idle_since_ >= params_.idle_timeout) return TerminationReason::kTimeout;
  return TerminationReason::kRunning;
}

TerminationReason check_termination(const Trace& trace, const RouteSpec& route, const TerminationParams& params) {
  TerminationMonitor monitor(route, params);
  for (const TraceSample& s : trace.samples) {
    const TerminationReason r = monitor.update(s);
    if (r != TerminationReason::kRunning) return r;
  }
  return TerminationReason::kRunning;
}

double route_completion(const Trace& trace, const RouteSpec& route, const WorldMap& map,
                        const TerminationParams& params) {
  const double length = route.length();
  if (!(length > 0.0)) throw std::invalid_argument("route length must be > 0");
  ProgressTracker tracker(route);
  double credited = 0.0;
  bool last_on_road = false;
  for (const TraceSample& s : trace.samples) {
    const double before = tracker.progress();
    const double after = tracker.update(s.pose.position());
    last_on_road = map.on_road(s.center);
    if (last_on_road) credited += after - before;
  }
  const double remaining = length - tracker.progress();
  if (last_on_road && remaining <= params.completion_tolerance) credited += std::max(0.0, remaining);
  return std::clamp(100.0 * credited / length, 0.0, 100.0);
}

RouteResult score_route(const Trace& trace, const RouteSpec& route, const WorldMap& map,
                        TerminationReason termination, const PenaltyTable& table, const TerminationParams& params) {
  RouteResult r;
  r.route = route.name();
  r.route_length = route.length();
  r.termination = termination == TerminationReason::kRunning ? check_termination(trace, route, params) : termination;
  r.ledger = detect_infractions(trace, map);
  r.rc = route_completion(trace, route, map, params);
  r.ip = infraction_penalty(r.ledger, table);
  r.ds = r.rc * r.ip;
  r.duration = trace.samples.empty() ? 0.0 : trace.samples.back().t - trace.samples.front().t;
  return r;
}

ScoreAggregate driving_score(std::span<const RouteResult> results) {
  if (results.empty()) throw std::invalid_argument("driving_score needs at least one route");
  ScoreAggregate agg;
  for (const RouteResult& r : results) {
    agg.ds += r.rc * r.ip;
    agg.rc += r.rc;
    agg.ip += r.ip;
  }
  const double n = static_cast<double>(results.size());
  agg.ds /= n;
  agg.rc /= n;
  agg.ip /= n;
  return agg;
}

double per_km(int count, double meters) {
  if (!(meters > 0.0)) return 0.0;
  return count / (meters / 1000.0);
}

}  // namespace sdcdrive
