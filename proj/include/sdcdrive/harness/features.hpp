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

#include <cstdint>
#include <vector>

#include "sdcdrive/sdc/sdc.hpp"

namespace sdcdrive {

inline constexpr std::size_t kFeatureSize = 384;
inline constexpr int kFeaturePool = 4;  // SDC pooled to 4x4 per class

// Network input stand-in: per-class occupancy fractions of the SDC pooled
// to 4x4 (368 values), then the TL and SS bits and speed / 10, zero-padded
// to 384. Without an SDC the pooled block is zero.
std::vector<double> oracle_features(const SdcTensor* sdc, bool tl, bool ss, double speed);

// Seeded uniform [-1, 1] features, one independent stream per (seed, step).
std::vector<double> random_features(std::uint64_t seed, std::int64_t step);

// SplitMix64 finaliser for deriving independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace sdcdrive
