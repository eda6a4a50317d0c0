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

#include "sdcdrive/sensor/depth_codec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sdcdrive {

EncodedDepthPixel encode_depth(double d) {
  if (!(d >= 0.0 && d <= kDepthRange)) {
    throw std::domain_error("depth " + std::to_string(d) + " m is outside [0, 1000]");
  }
  auto n = static_cast<std::uint32_t>(std::floor(d / kDepthRange * kDepthCodeMax + 0.5));
  n = std::min(n, kDepthCodeMax);
  return {static_cast<std::uint8_t>(n & 0xFF), static_cast<std::uint8_t>((n >> 8) & 0xFF),
          static_cast<std::uint8_t>(n >> 16)};
}

double decode_depth(EncodedDepthPixel p) {
  return static_cast<double>(p.code()) / kDepthCodeMax * kDepthRange;
}

std::vector<std::uint8_t> encode_depth_map(const DepthMap& depth) {
  const std::size_t plane = depth.size();
  std::vector<std::uint8_t> out(3 * plane);
  const auto values = depth.data();
  for (std::size_t i = 0; i < plane; ++i) {
    const EncodedDepthPixel p = encode_depth(values[i]);
    out[i] = p.r;
    out[plane + i] = p.g;
    out[2 * plane + i] = p.b;
  }
  return out;
}

DepthMap decode_depth_map(std::span<const std::uint8_t> rgb_planes, int rows, int cols) {
  DepthMap out(rows, cols);
  const std::size_t plane = out.size();
  if (rgb_planes.size() != 3 * plane) throw std::invalid_argument("encoded depth has the wrong size");
  auto values = out.data();
  for (std::size_t i = 0; i < plane; ++i) {
    values[i] = decode_depth({rgb_planes[i], rgb_planes[plane + i], rgb_planes[2 * plane + i]});
  }
  return out;
}

}  // namespace sdcdrive
