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

#include "sdcdrive/sensor/camera.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdcdrive {

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0)) throw std::invalid_argument("camera focal length must be > 0");
  if (width <= 0 || height <= 0 || render_width < width || render_height < height) {
    throw std::invalid_argument("camera crop must fit inside the render");
  }
  if (!(max_range > 0.0)) throw std::invalid_argument("camera max range must be > 0");
  if (!(mount_height > 0.0)) throw std::invalid_argument("camera must be mounted above the ground");
  if (std::abs(pitch_deg) >= 80.0) throw std::invalid_argument("camera pitch out of range");
}

CameraPose camera_pose(const Pose& ego, const CameraIntrinsics& cam) {
  CameraPose p;
  p.forward = forward_vector(ego.heading_deg);
  p.right = right_vector(ego.heading_deg);
  p.position = ego.position() + p.forward * cam.mount_forward + p.right * cam.mount_right;
  p.height = cam.mount_height;
  p.pitch_rad = cam.pitch_deg * std::numbers::pi / 180.0;
  return p;
}

}  // namespace sdcdrive
