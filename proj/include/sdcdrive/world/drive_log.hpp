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
#include <filesystem>
#include <string>
#include <vector>

#include "sdcdrive/common/controls.hpp"
#include "sdcdrive/common/grid.hpp"
#include "sdcdrive/control/waypoints.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

// What the pipeline produced at a log boundary.
struct PipelineOutputs {
  DepthMap depth;          // sensed depth, meters
  SemanticImage semantic;  // sensed (or ground-truth) labels
  LocalPoint route_point;
  VehicularControls controls;
  Waypoints waypoints{};
  bool tl = false;
  bool ss = false;
};

struct DriveLogFrame {
  std::size_t index = 0;
  double t = 0.0;
  std::vector<std::uint8_t> depth_rgb;  // encoded depth, [3, H, W] channel-first
  SemanticImage semantic;
  double speed = 0.0;
  LocalPoint route_point;
  VehicularControls controls;
  Waypoints waypoints{};
  int tl = 0;
  int ss = 0;
  bool operator==(const DriveLogFrame&) const = default;
};

struct DriveLogMeta {
  std::string role = "reference";  // reference | prediction
  std::string map;
  std::string route;
  std::string scenario;
  std::string weather;
  std::string variant;
  std::uint64_t seed = 0;
  double dt = 0.05;
  double log_period = 0.5;
  bool operator==(const DriveLogMeta&) const = default;
};

struct DriveLog {
  DriveLogMeta meta;
  std::vector<DriveLogFrame> frames;
};

DriveLogFrame record_log(const WorldState& state, const PipelineOutputs& outputs, std::size_t index);

// Directory layout: index.json plus frames/NNNNNN_depth.sdct (u8 [3,H,W])
// and frames/NNNNNN_semantic.sdct (u8 [H,W]).
void write_drive_log(const std::filesystem::path& dir, const DriveLog& log);
DriveLog read_drive_log(const std::filesystem::path& dir);

}  // namespace sdcdrive
