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

#include "sdcdrive/world/route.hpp"

#include <stdexcept>

namespace sdcdrive {

RouteSpec::RouteSpec(std::string name, std::vector<Vec2> goals)
    : name_(std::move(name)), goals_(std::move(goals)) {
  if (goals_.size() < 2) throw std::invalid_argument("route '" + name_ + "' needs >= 2 goal points");
  for (std::size_t i = 1; i < goals_.size(); ++i) {
    if (goals_[i] == goals_[i - 1]) {
      throw std::invalid_argument("route '" + name_ + "' has repeated consecutive goal points");
    }
  }
  const Polyline sparse(goals_);
  for (std::size_t i = 0; i < goals_.size(); ++i) goal_arcs_.push_back(sparse.arc_at(i));
  path_ = sparse.densified(kDenseSpacing);
}

Vec2 RouteSpec::target_after(double s) const {
  for (std::size_t i = 0; i < goals_.size(); ++i) {
    if (goal_arcs_[i] > s + kTargetMinDistance) return goals_[i];
  }
  return goals_.back();
}

}  // namespace sdcdrive
