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

#include <array>
#include <string_view>

#include "sdcdrive/common/controls.hpp"

namespace sdcdrive {

inline constexpr double kThrottleThreshold = 0.2;

/// alpha_1..alpha_7, the per-task loss weights (SEG, TL, SS, ST, TH, BR, WP).
struct LossWeights {
  std::array<double, 7> alpha{1, 1, 1, 1, 1, 1, 1};

  double operator[](int k) const { return alpha.at(static_cast<std::size_t>(k - 1)); }
};

/// beta[row][col]: row 0 weights the MLP agent, row 1 the PID agent;
/// columns are steering, throttle, brake.
struct ControlWeights {
  std::array<std::array<double, 3>, 2> beta{{{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}}};
};

ControlWeights compute_beta(const LossWeights& weights);

enum class FusionBranch { kBlend = 1, kMlpOnly = 2, kPidOnly = 3, kStop = 4 };

struct FusionResult {
  VehicularControls controls;
  FusionBranch branch;
};

FusionResult fuse_controls_detailed(const VehicularControls& mlp, const VehicularControls& pid,
                                    const ControlWeights& beta);
VehicularControls fuse_controls(const VehicularControls& mlp, const VehicularControls& pid,
                                const ControlWeights& beta);

enum class PolicyVariant { kProposed, kMlp, kPid, kBoth, kNoSdc };
std::string_view to_string(PolicyVariant v);
PolicyVariant parse_policy_variant(std::string_view s);

// Whether the variant consumes the BEV map when building network features.
bool uses_sdc(PolicyVariant v);
bool needs_mlp(PolicyVariant v);
bool needs_pid(PolicyVariant v);

// Final control decision for a variant given both agents' outputs.
FusionResult apply_policy(PolicyVariant variant, const VehicularControls& mlp, const VehicularControls& pid,
                          const ControlWeights& beta);

}  // namespace sdcdrive
