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
#include <optional>
#include <string>
#include <vector>

#include "sdcdrive/harness/episode.hpp"
#include "sdcdrive/scoring/metrics.hpp"
#include "sdcdrive/scoring/scoring.hpp"
#include "sdcdrive/world/map_io.hpp"

namespace sdcdrive {

struct RunConfig {
  std::filesystem::path map_path;
  std::vector<std::filesystem::path> route_sets;
  std::vector<std::string> route_filter;  // empty = every route
  ScenarioKind scenario = ScenarioKind::k1WN;
  PolicyVariant variant = PolicyVariant::kProposed;
  std::optional<std::filesystem::path> weights_path;
  std::vector<std::string> weathers;  // empty = ClearNoon for 1W, all 14 for AW
  std::uint64_t seed = 0;
  int repeats = 0;  // 0 = 3 for 1W, 1 for AW
  std::filesystem::path out_dir;
  WaypointSource waypoints = WaypointSource::kOracle;
  MlpSource mlp = MlpSource::kOracle;
  FeatureSource features = FeatureSource::kOracle;
  bool weather_noise = true;
  double dt = 0.05;
  double log_period = 0.5;
  double max_time = 600.0;
  LossWeights alpha;
  bool write_logs = false;
  bool write_traces = true;
  int jobs = 1;

  std::vector<std::string> resolved_weathers() const;
  int resolved_repeats() const;
  // Checks files and flags; throws before anything is simulated.
  void validate() const;
};

struct EpisodeKey {
  std::string route;
  std::string weather;
  int repeat = 0;
  std::uint64_t seed = 0;
  std::string name() const;  // route__weather__rK
};

// One (weather, repeat) pass over all routes.
struct ResultGroup {
  std::string weather;
  int repeat = 0;
  ScoreAggregate score;
};

struct Spread {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

struct RunReport {
  std::vector<EpisodeKey> keys;
  std::vector<RouteResult> results;
  std::vector<EpisodeStats> stats;
  std::vector<ResultGroup> groups;
  Spread ds, rc, ip;
  std::optional<MetricReport> metrics;  // policy vs expert across all log frames
};

// Seed of episode (route, weather, repeat) under a run seed.
std::uint64_t episode_seed(std::uint64_t run_seed, std::size_t route, std::size_t weather, int repeat);

RunReport run_scenario(const RunConfig& config);

// Expert-driven episodes, one reference log (and optionally a prediction
// log with the configured policy) per route x weather x repeat.
RunReport generate_expert_logs(const RunConfig& config, bool with_predictions);

MetricReport score_logs(const DriveLog& prediction, const DriveLog& reference, const LossWeights& alpha = {});

// Marker points drawn on the SDC panel: the ego anchor at the origin, then
// the frame's waypoints.
std::vector<LocalPoint> frame_marker_points(const DriveLogFrame& frame);
// Per-frame composite: decoded depth | semantic | SDC with markers.
RgbImage render_frame(const DriveLogFrame& frame, const CameraIntrinsics& camera = {});
// Writes one PPM per frame (and optionally the SDC tensors); returns the
// number of frames written.
std::size_t render_episode(const DriveLog& log, const std::filesystem::path& out_dir, bool dump_sdc,
                           const CameraIntrinsics& camera = {});

// Structured-text records.
std::string to_json(const RouteResult& r, const EpisodeKey& key, const EpisodeStats& stats);
std::string to_json(const MetricReport& m);
std::string summary_json(const RunConfig& config, const RunReport& report);

}  // namespace sdcdrive
