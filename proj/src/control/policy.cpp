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

#include "sdcdrive/control/policy.hpp"

#include <stdexcept>
#include <string>

namespace sdcdrive {

ControlWeights compute_beta(const LossWeights& w) {
  for (double a : w.alpha) {
    if (a < 0.0) throw std::invalid_argument("loss weights must be >= 0");
  }
  ControlWeights out;
  for (int col = 0; col < 3; ++col) {
    const double own = w[4 + col];
    const double denom = own + w[7];
    if (!(denom > 0.0)) throw std::invalid_argument("loss weights give a zero beta denominator");
    out.beta[0][col] = own / denom;
    out.beta[1][col] = 1.0 - out.beta[0][col];
  }
  return out;
}

FusionResult fuse_controls_detailed(const VehicularControls& mlp, const VehicularControls& pid,
                                    const ControlWeights& w) {
  const bool mlp_go = mlp.throttle >= kThrottleThreshold;
  const bool pid_go = pid.throttle >= kThrottleThreshold;
  const auto& b = w.beta;
  if (mlp_go && pid_go) {
    return {{b[0][0] * mlp.steering + b[1][0] * pid.steering, b[0][1] * mlp.throttle + b[1][1] * pid.throttle, 0.0},
            FusionBranch::kBlend};
  }
  if (mlp_go) return {{mlp.steering, mlp.throttle, 0.0}, FusionBranch::kMlpOnly};
  if (pid_go) return {{pid.steering, pid.throttle, 0.0}, FusionBranch::kPidOnly};
  // The PID agent votes full brake when stopping.
  constexpr double kPidBrake = 1.0;
  return {{0.0, 0.0, b[0][2] * mlp.brake + b[1][2] * kPidBrake}, FusionBranch::kStop};
}

VehicularControls fuse_controls(const VehicularControls& mlp, const VehicularControls& pid,
                                const ControlWeights& beta) {
  return fuse_controls_detailed(mlp, pid, beta).controls;
}

std::string_view to_string(PolicyVariant v) {
  switch (v) {
    case PolicyVariant::kProposed: return "Proposed";
    case PolicyVariant::kMlp: return "MLP";
    case PolicyVariant::kPid: return "PID";
    case PolicyVariant::kBoth: return "Both";
    case PolicyVariant::kNoSdc: return "NoSDC";
  }
  return "?";
}

PolicyVariant parse_policy_variant(std::string_view s) {
  if (s == "Proposed") return PolicyVariant::kProposed;
  if (s == "MLP") return PolicyVariant::kMlp;
  if (s == "PID") return PolicyVariant::kPid;
  if (s == "Both") return PolicyVariant::kBoth;
  if (s == "NoSDC") return PolicyVariant::kNoSdc;
  throw std::invalid_argument("unknown policy variant: " + std::string(s));
}

bool uses_sdc(PolicyVariant v) { return v != PolicyVariant::kNoSdc; }
bool needs_mlp(PolicyVariant v) { return v != PolicyVariant::kPid; }
bool needs_pid(PolicyVariant v) { return v != PolicyVariant::kMlp; }

FusionResult apply_policy(PolicyVariant variant, const VehicularControls& mlp, const VehicularControls& pid,
                          const ControlWeights& beta) {
  switch (variant) {
    case PolicyVariant::kProposed:
    case PolicyVariant::kNoSdc:
      return fuse_controls_detailed(mlp, pid, beta);
    case PolicyVariant::kMlp:
      if (mlp.throttle >= kThrottleThreshold) return {{mlp.steering, mlp.throttle, 0.0}, FusionBranch::kMlpOnly};
      return {VehicularControls::full_stop(), FusionBranch::kStop};
    case PolicyVariant::kPid:
      if (pid.throttle >= kThrottleThreshold) return {{pid.steering, pid.throttle, 0.0}, FusionBranch::kPidOnly};
      return {VehicularControls::full_stop(), FusionBranch::kStop};
    case PolicyVariant::kBoth:
      if (mlp.throttle >= kThrottleThreshold && pid.throttle >= kThrottleThreshold) {
        return fuse_controls_detailed(mlp, pid, beta);
      }
      // Either agent below threshold stops the car through the brake-fusion branch.
      return fuse_controls_detailed({mlp.steering, 0.0, mlp.brake}, {pid.steering, 0.0, pid.brake}, beta);
  }
  throw std::invalid_argument("unknown policy variant");
}

}  // namespace sdcdrive
