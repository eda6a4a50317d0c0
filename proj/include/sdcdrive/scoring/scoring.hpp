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
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdcdrive/scoring/trace.hpp"
#include "sdcdrive/world/route.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

enum class InfractionType { kPedestrian = 0, kVehicle, kStatic, kRedLight, kStopSign };
inline constexpr std::size_t kNumInfractionTypes = 5;
std::string_view to_string(InfractionType t);

struct PenaltyTable {
  std::array<double, kNumInfractionTypes> penalty{0.50, 0.60, 0.65, 0.70, 0.80};

  double operator[](InfractionType t) const { return penalty[static_cast<std::size_t>(t)]; }
  void validate() const;
};

struct InfractionEvent {
  InfractionType type = InfractionType::kPedestrian;
  double t = 0.0;
  std::string subject;  // actor, obstacle, light or sign that was hit/violated
};

struct InfractionLedger {
  std::array<int, kNumInfractionTypes> counts{};
  double offroad_m = 0.0;
  std::vector<InfractionEvent> events;

  int count(InfractionType t) const { return counts[static_cast<std::size_t>(t)]; }
  void add(InfractionType t, double time, std::string subject);
  bool empty() const;
  // Concatenation of two ledgers (counts add, events merge).
  InfractionLedger merged(const InfractionLedger& other) const;
};

inline constexpr double kCollisionMergeWindow = 2.0;  // s
inline constexpr double kStopSignSpeed = 0.1;         // m/s

// Collisions count on the rising edge of contact with each actor or
// obstacle; a new contact within 2 s of the previous one with the same
// subject is the same collision. Bicyclists count as vehicles.
InfractionLedger detect_infractions(const Trace& trace, const WorldMap& map);

double infraction_penalty(const InfractionLedger& ledger, const PenaltyTable& table = {});

enum class TerminationReason { kRunning, kCompleted, kDeviation, kTimeout, kBlocked };
std::string_view to_string(TerminationReason r);
TerminationReason parse_termination_reason(std::string_view s);

struct TerminationParams {
  double max_deviation = 30.0;     // m from the reference path
  double idle_timeout = 180.0;     // s without action
  double idle_window = 1.0;        // s sliding window
  double idle_displacement = 0.05; // m over the window
  double completion_tolerance = 3.0;  // m of rear-axle progress short of the route end
};

// Route progress as the scorer sees it: the rear-axle point projected onto
// the path inside a short window around the previous progress, never
// decreasing.
class ProgressTracker {
 public:
  static constexpr double kBacktrack = 2.0;
  static constexpr double kLookahead = 10.0;

  explicit ProgressTracker(const RouteSpec& route) : route_(&route) {}
  double update(Vec2 p);
  double progress() const { return s_; }

 private:
  const RouteSpec* route_;
  double s_ = 0.0;
};

// Incremental termination check fed one sample at a time.
class TerminationMonitor {
 public:
  TerminationMonitor(const RouteSpec& route, TerminationParams params = {});

  TerminationReason update(const TraceSample& sample);
  double progress() const { return progress_.progress(); }
  double idle_time(double now) const { return idle_since_ ? now - *idle_since_ : 0.0; }

 private:
  const RouteSpec* route_;
  TerminationParams params_;
  ProgressTracker progress_;
  std::deque<std::pair<double, Vec2>> window_;
  std::optional<double> idle_since_;
};

TerminationReason check_termination(const Trace& trace, const RouteSpec& route, const TerminationParams& params = {});

// Percent of the route length covered while the ego centre was on a road.
// Progress past the route end within the completion tolerance is credited
// when the run completed.
double route_completion(const Trace& trace, const RouteSpec& route, const WorldMap& map,
                        const TerminationParams& params = {});

struct RouteResult {
  std::string route;
  std::string weather;
  int repeat = 0;
  std::uint64_t seed = 0;
  double rc = 0.0;
  double ip = 1.0;
  double ds = 0.0;
  TerminationReason termination = TerminationReason::kRunning;
  InfractionLedger ledger;
  double route_length = 0.0;
  double duration = 0.0;
};

// Scores a finished trace. If `termination` is kRunning the reason is
// recomputed from the trace.
RouteResult score_route(const Trace& trace, const RouteSpec& route, const WorldMap& map,
                        TerminationReason termination = TerminationReason::kRunning,
                        const PenaltyTable& table = {}, const TerminationParams& params = {});

struct ScoreAggregate {
  double ds = 0.0;
  double rc = 0.0;
  double ip = 0.0;
};

// Means over routes; DS is the mean of per-route products.
ScoreAggregate driving_score(std::span<const RouteResult> results);

// Counts per kilometre of route length driven over.
double per_km(int count, double meters);

}  // namespace sdcdrive
