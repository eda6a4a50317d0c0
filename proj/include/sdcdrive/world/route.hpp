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

#include <string>
#include <vector>

#include "sdcdrive/common/geometry.hpp"

namespace sdcdrive {

/// Sparse goal points from the global planner plus the dense reference path
/// through them. The route length is the arc length of the dense path.
class RouteSpec {
 public:
  static constexpr double kDenseSpacing = 1.0;
  // Goal points closer than this ahead of the ego are skipped as targets.
  static constexpr double kTargetMinDistance = 4.0;

  RouteSpec(std::string name, std::vector<Vec2> goals);

  const std::string& name() const { return name_; }
  const std::vector<Vec2>& goals() const { return goals_; }
  const Polyline& path() const { return path_; }
  double length() const { return path_.length(); }
  // Arc length of each goal point along the path.
  const std::vector<double>& goal_arcs() const { return goal_arcs_; }

  // Next goal point at least kTargetMinDistance ahead of progress s.
  Vec2 target_after(double s) const;

  // Distance from p to the nearest point of the path.
  double deviation(Vec2 p) const { return path_.project(p).distance; }

 private:
  std::string name_;
  std::vector<Vec2> goals_;
  std::vector<double> goal_arcs_;
  Polyline path_;
};

}  // namespace sdcdrive
