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

#include "sdcdrive/control/transform.hpp"

#include <cmath>
#include <numbers>

namespace sdcdrive {

LocalPoint global_to_local(Vec2 point, const Pose& ego) {
  const double angle = (90.0 + ego.heading_deg) * std::numbers::pi / 180.0;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double dx = point.x - ego.x_g;
  const double dy = point.y - ego.y_g;
  // R^T with R = [[c, -s], [s, c]].
  return {c * dx + s * dy, -s * dx + c * dy};
}

Vec2 local_to_global(LocalPoint point, const Pose& ego) {
  const double angle = (90.0 + ego.heading_deg) * std::numbers::pi / 180.0;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {ego.x_g + c * point.x - s * point.y, ego.y_g + s * point.x + c * point.y};
}

}  // namespace sdcdrive
