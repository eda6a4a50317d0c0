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
#include <string>
#include <vector>

#include "sdcdrive/common/geometry.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

struct ActorSnapshot {
  std::size_t id = 0;  // index into the map's NPC list
  ActorKind kind = ActorKind::kPedestrian;
  Polygon footprint;
};

// Everything the scorer needs from one simulation step.
struct TraceSample {
  double t = 0.0;
  Pose pose;
  double speed = 0.0;
  Polygon footprint;
  Vec2 front;
  Vec2 center;
  std::vector<ActorSnapshot> actors;
  std::vector<LightColor> lights;  // parallel to the map's lights
};

struct Trace {
  std::string map;
  std::string route;
  std::vector<TraceSample> samples;
};

TraceSample trace_sample(const WorldState& state);

// Structured-text round trip; doubles are written with full precision so a
// re-read trace scores identically.
std::string trace_to_json(const Trace& trace);
Trace trace_from_json(const std::string& text);
void write_trace(const std::filesystem::path& path, const Trace& trace);
Trace read_trace(const std::filesystem::path& path);

}  // namespace sdcdrive
