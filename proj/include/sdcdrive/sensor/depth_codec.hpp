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
#include <span>
#include <vector>

#include "sdcdrive/common/grid.hpp"

namespace sdcdrive {

inline constexpr double kDepthRange = 1000.0;
inline constexpr std::uint32_t kDepthCodeMax = (1u << 24) - 1;

struct EncodedDepthPixel {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const EncodedDepthPixel&) const = default;
  std::uint32_t code() const { return r + 256u * g + 65536u * b; }
};

// Nearest 24-bit code, ties rounded up. Throws for d outside [0, 1000].
EncodedDepthPixel encode_depth(double d);
double decode_depth(EncodedDepthPixel p);

// Whole-image codec. The encoded image is stored channel-first (R, G, B).
std::vector<std::uint8_t> encode_depth_map(const DepthMap& depth);
DepthMap decode_depth_map(std::span<const std::uint8_t> rgb_planes, int rows, int cols);

}  // namespace sdcdrive
