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

#include "sdcdrive/control/waypoints.hpp"

#include <stdexcept>

namespace sdcdrive {

WaypointPrediction predict_waypoints(std::span<const double> features, LocalPoint route, double speed,
                                     double tl, double ss, const WeightBundle& weights) {
  if (features.size() != weights.feature_size()) {
    throw std::invalid_argument("predict_waypoints: feature size does not match the weight bundle");
  }
  std::vector<double> hidden = linear(weights.at("reduce.weight"), weights.at("reduce.bias"), features);
  const std::array<double, 2> tlss{tl, ss};
  const std::vector<double> bias = linear(weights.at("tlss.weight"), weights.at("tlss.bias"), tlss);

  WaypointPrediction out;
  LocalPoint current{0.0, 0.0};
  std::vector<double> biased(hidden.size());
  for (std::size_t i = 0; i < kNumWaypoints; ++i) {
    const std::array<double, WeightBundle::kGruInput> input{current.x, current.y, route.x, route.y, speed};
    hidden = gru_cell(weights, input, hidden);
    for (std::size_t j = 0; j < hidden.size(); ++j) biased[j] = hidden[j] + bias[j];
    const auto delta = linear(weights.at("head.weight"), weights.at("head.bias"), biased);
    out.deltas[i] = {delta[0], delta[1]};
    current = {current.x + delta[0], current.y + delta[1]};
    out.waypoints[i] = current;
  }
  out.latent = std::move(biased);
  return out;
}

Waypoints oracle_waypoints(const WorldState& state, const RouteSpec& route, const OracleWaypointParams& params) {
  Waypoints out;
  for (std::size_t i = 0; i < kNumWaypoints; ++i) {
    const Vec2 p = route.path().point_at(state.route_progress + params.spacing[i]);
    out[i] = global_to_local(p, state.ego.pose);
  }
  return out;
}

}  // namespace sdcdrive
