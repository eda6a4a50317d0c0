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

#include "sdcdrive/control/agents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdcdrive {

VehicularControls mlp_agent(std::span<const double> latent, const WeightBundle& weights) {
  std::vector<double> hidden = linear(weights.at("mlp.fc1.weight"), weights.at("mlp.fc1.bias"), latent);
  for (double& v : hidden) v = std::max(0.0, v);
  const auto out = linear(weights.at("mlp.fc2.weight"), weights.at("mlp.fc2.bias"), hidden);
  const double steer = sigmoid(out[0]);
  const double throttle = sigmoid(out[1]);
  const double brake = sigmoid(out[2]);
  return {2.0 * steer - 1.0, kMaxThrottle * throttle, brake};
}

void PidGains::validate() const {
  for (const PidTerm& t : {lateral, longitudinal}) {
    if (t.kp < 0.0 || t.ki < 0.0 || t.kd < 0.0) throw std::invalid_argument("PID gains must be >= 0");
  }
  if (integral_clamp < 0.0) throw std::invalid_argument("integral clamp must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("PID dt must be > 0");
}

PidController::PidController(PidTerm gains, double integral_clamp, double dt)
    : gains_(gains), integral_clamp_(integral_clamp), dt_(dt) {}

double PidController::step(double error) {
  integral_ = std::clamp(integral_ + error * dt_, -integral_clamp_, integral_clamp_);
  const double derivative = primed_ ? error - previous_ : 0.0;
  previous_ = error;
  primed_ = true;
  return gains_.kp * error + gains_.ki * integral_ + gains_.kd * derivative;
}

void PidController::reset() {
  integral_ = 0.0;
  previous_ = 0.0;
  primed_ = false;
}

PidTargets pid_targets(const Waypoints& wp) {
  const double ax = 0.5 * (wp[0].x + wp[1].x);
  const double ay = 0.5 * (wp[0].y + wp[1].y);
  PidTargets t;
  // Forward (y) is the reference axis; the aim point at the origin means straight ahead.
  t.heading = (ax == 0.0 && ay == 0.0) ? 0.0 : std::atan2(ax, ay);
  t.desired_speed = 2.0 * std::hypot(wp[0].x - wp[1].x, wp[0].y - wp[1].y);
  return t;
}

PidAgent::PidAgent(const PidGains& gains)
    : lateral_(gains.lateral, gains.integral_clamp, gains.dt),
      longitudinal_(gains.longitudinal, gains.integral_clamp, gains.dt) {
  gains.validate();
}

VehicularControls PidAgent::step(const Waypoints& wp, double speed) {
  const PidTargets t = pid_targets(wp);
  // Heading error is fed in units of a right angle.
  const double steering = lateral_.step(t.heading / (0.5 * std::numbers::pi));
  const double throttle = longitudinal_.step(t.desired_speed - speed);
  return {std::clamp(steering, -1.0, 1.0), std::clamp(throttle, 0.0, kMaxThrottle), 0.0};
}

void PidAgent::reset() {
  lateral_.reset();
  longitudinal_.reset();
}

}  // namespace sdcdrive
