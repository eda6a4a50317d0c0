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

#include <vector>

#include "sdcdrive/common/grid.hpp"
#include "sdcdrive/sensor/camera.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

struct RenderOutput {
  DepthMap depth;
  SemanticImage semantic;
};

// Vertical prism standing on the ground plane.
struct Prism {
  Polygon footprint;
  double height = 0.0;
  std::uint8_t class_id = 0;
};

// Everything the raycaster can hit besides the ground: static obstacles,
// signal and sign poles, and the current actor footprints.
std::vector<Prism> scene_prisms(const WorldState& world);

// Depth is planar z-depth along the optical axis. Rays that hit nothing
// within max_range report max_range and the sky class; ground hits are
// labelled road, sidewalk or ground by the map polygons.
//
// Full 300x400 render.
RenderOutput render_full(const WorldState& world, const CameraIntrinsics& cam);

// The central 256x256 window only; bit-identical to cropping render_full.
RenderOutput render_depth_semantic(const WorldState& world, const CameraIntrinsics& cam);

// Serial, unculled brute-force version of render_depth_semantic that tests
// every prism for every pixel. Kept as the reference for the parallel path.
RenderOutput render_depth_semantic_reference(const WorldState& world, const CameraIntrinsics& cam);

RenderOutput crop_center(const RenderOutput& full, const CameraIntrinsics& cam);

// Nearest hit parameter of one ray against one prism (z-depth units), or a
// negative value on a miss. Exposed for tests.
double intersect_prism(const Prism& prism, Vec2 origin, double origin_z, Vec2 dir_h, double dir_z);

}  // namespace sdcdrive
