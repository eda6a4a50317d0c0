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

#include <algorithm>

namespace sdcdrive {

inline constexpr double kMaxThrottle = 0.75;

/// Denormalized actuator command: steering in [-1, 1] (positive turns right),
/// throttle in [0, 0.75], brake in [0, 1].
struct VehicularControls {
  double steering = 0.0;
  double throttle = 0.0;
  double brake = 0.0;

  bool operator==(const VehicularControls&) const = default;

  bool in_range() const {
    return steering >= -1.0 && steering <= 1.0 && throttle >= 0.0 &&
           throttle <= kMaxThrottle && brake >= 0.0 && brake <= 1.0;
  }

  VehicularControls clamped() const {
    return {std::clamp(steering, -1.0, 1.0), std::clamp(throttle, 0.0, kMaxThrottle),
            std::clamp(brake, 0.0, 1.0)};
  }

  static constexpr VehicularControls full_stop() { return {0.0, 0.0, 1.0}; }
};

}  // namespace sdcdrive
