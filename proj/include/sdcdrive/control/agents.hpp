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

#include <span>

#include "sdcdrive/common/controls.hpp"
#include "sdcdrive/control/nn.hpp"
#include "sdcdrive/control/waypoints.hpp"

namespace sdcdrive {

// Two linear layers with a ReLU, logistic squashing, then denormalization:
// steering = 2s - 1, throttle = 0.75t, brake = b.
VehicularControls mlp_agent(std::span<const double> latent, const WeightBundle& weights);

struct PidTerm {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

struct PidGains {
  PidTerm lateral{0.9, 0.75, 0.3};
  PidTerm longitudinal{5.0, 0.5, 1.0};
  double integral_clamp = 1.0;  // |integral of error| limit, error-seconds
  double dt = 0.05;

  void validate() const;
};

// Discrete PID. The integral is the error integrated over dt and clamped; the
// derivative is the per-sample error difference (zero on the first call).
class PidController {
 public:
  PidController(PidTerm gains, double integral_clamp, double dt);

  double step(double error);
  void reset();

 private:
  PidTerm gains_;
  double integral_clamp_;
  double dt_;
  double integral_ = 0.0;
  double previous_ = 0.0;
  bool primed_ = false;
};

struct PidTargets {
  double heading = 0.0;        // rad, 0 = straight ahead, positive to the right
  double desired_speed = 0.0;  // m/s
};

// Aim point is the mean of the first two waypoints; desired speed is twice
// the distance between them.
PidTargets pid_targets(const Waypoints& wp);

// Lateral and longitudinal PID pair. Brake is left at 0; the fusion policy
// owns braking.
class PidAgent {
 public:
  explicit PidAgent(const PidGains& gains = {});

  VehicularControls step(const Waypoints& wp, double speed);
  void reset();

 private:
  PidController lateral_;
  PidController longitudinal_;
};

}  // namespace sdcdrive
