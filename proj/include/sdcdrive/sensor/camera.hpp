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

#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

// Pinhole camera. Intrinsics are given in crop coordinates; the full render
// is centred on the crop, so its principal point is shifted by the crop
// offsets.
struct CameraIntrinsics {
  int render_width = 400;
  int render_height = 300;
  int width = 256;
  int height = 256;
  double fx = 128.0;  // 90 degree horizontal FOV over 256 px
  double cx = 127.5;
  double cy = 127.5;
  // Mount relative to the ego reference point: forward/right offsets and
  // height in meters, pitch in degrees (positive looks up).
  double mount_forward = 0.0;
  double mount_right = 0.0;
  double mount_height = 1.6;
  double pitch_deg = 0.0;
  double max_range = 1000.0;

  void validate() const;
  int crop_row_offset() const { return (render_height - height) / 2; }
  int crop_col_offset() const { return (render_width - width) / 2; }
};

// Camera placement in the world for one frame.
struct CameraPose {
  Vec2 position;
  double height = 0.0;
  Vec2 forward;  // unit, horizontal
  Vec2 right;    // unit, horizontal
  double pitch_rad = 0.0;
};

CameraPose camera_pose(const Pose& ego, const CameraIntrinsics& cam);

}  // namespace sdcdrive
