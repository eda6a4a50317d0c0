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
#include <memory>
#include <optional>
#include <string_view>

#include "sdcdrive/control/agents.hpp"
#include "sdcdrive/control/nn.hpp"
#include "sdcdrive/control/policy.hpp"
#include "sdcdrive/scoring/metrics.hpp"
#include "sdcdrive/scoring/scoring.hpp"
#include "sdcdrive/scoring/trace.hpp"
#include "sdcdrive/sensor/camera.hpp"
#include "sdcdrive/world/drive_log.hpp"
#include "sdcdrive/world/expert.hpp"
#include "sdcdrive/world/route.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

// Where the waypoints fed to the PID agent come from. The oracle samples the
// reference path and collapses to the ego origin while the expert is holding
// the car (red light, stop sign, actor ahead, route end).
enum class WaypointSource { kOracle, kNetwork };
// Where the MLP agent's controls come from; the oracle is the expert.
enum class MlpSource { kOracle, kNetwork };
// Network feature vector: oracle encoding of the SDC or seeded noise.
enum class FeatureSource { kOracle, kRandom };
// Who actually drives: the fused policy, or the expert (log generation).
enum class Driver { kPolicy, kExpert };

std::string_view to_string(WaypointSource s);
std::string_view to_string(MlpSource s);
std::string_view to_string(FeatureSource s);
WaypointSource parse_waypoint_source(std::string_view s);
MlpSource parse_mlp_source(std::string_view s);
FeatureSource parse_feature_source(std::string_view s);

struct EpisodeConfig {
  std::shared_ptr<const WorldMap> map;
  std::shared_ptr<const RouteSpec> route;
  ScenarioConfig scenario;
  PolicyVariant variant = PolicyVariant::kProposed;
  std::shared_ptr<const WeightBundle> weights;  // required by network sources
  WaypointSource waypoints = WaypointSource::kOracle;
  MlpSource mlp = MlpSource::kOracle;
  FeatureSource features = FeatureSource::kOracle;
  Driver driver = Driver::kPolicy;
  bool weather_noise = true;
  LossWeights alpha;
  PidGains gains;
  ExpertParams expert;
  CameraIntrinsics camera;
  TerminationParams termination;
  PenaltyTable penalties;
  double max_time = 600.0;  // episode budget, s; exhausting it ends the run as blocked
  bool record_log = false;
  // With the expert driving, also log what the policy would have done.
  bool record_prediction = false;

  bool needs_network() const;
  void validate() const;
};

struct EpisodeStats {
  std::int64_t steps = 0;
  std::int64_t frames_sensed = 0;
  std::int64_t sdc_produced = 0;
  std::int64_t sdc_consumed = 0;
  std::array<std::int64_t, 4> branch_counts{};  // fusion branches 1..4
  int clamp_events = 0;
  int events_fired = 0;
};

struct EpisodeResult {
  RouteResult result;
  Trace trace;
  std::optional<DriveLog> log;             // frames of whoever drove
  std::optional<DriveLog> prediction_log;  // policy outputs on expert frames
  MetricAccumulator metric_frames;         // policy vs expert at log frames
  std::optional<MetricReport> metrics;
  EpisodeStats stats;
};

// Closed loop until termination: sense, optionally corrupt by weather, map,
// decide, fuse, step.
EpisodeResult run_episode(const EpisodeConfig& config);

}  // namespace sdcdrive
