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

#include "sdcdrive/common/geometry.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {

/// Point in the ego BEV frame: x right-positive, y forward-positive, meters.
struct LocalPoint {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const LocalPoint&) const = default;
};

// Subtract the ego position, then apply the transpose of the rotation by
// (90 + heading) degrees.
LocalPoint global_to_local(Vec2 point, const Pose& ego);

// Inverse of global_to_local.
Vec2 local_to_global(LocalPoint point, const Pose& ego);

}  // namespace sdcdrive
