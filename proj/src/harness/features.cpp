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

#include "sdcdrive/harness/features.hpp"

#include <random>

namespace sdcdrive {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<double> oracle_features(const SdcTensor* sdc, bool tl, bool ss, double speed) {
  std::vector<double> f(kFeatureSize, 0.0);
  constexpr int block = kSdcSize / kFeaturePool;
  constexpr double cells = static_cast<double>(block) * block;
  if (sdc != nullptr) {
    for (int r = 0; r < kSdcSize; ++r) {
      for (int c = 0; c < kSdcSize; ++c) {
        const int cls = sdc->label(r, c);
        if (cls < 0) continue;
        const int pooled = (cls * kFeaturePool + r / block) * kFeaturePool + c / block;
        f[static_cast<std::size_t>(pooled)] += 1.0 / cells;
      }
    }
  }
  constexpr std::size_t tail = static_cast<std::size_t>(kNumClasses) * kFeaturePool * kFeaturePool;
  f[tail] = tl ? 1.0 : 0.0;
  f[tail + 1] = ss ? 1.0 : 0.0;
  f[tail + 2] = speed / 10.0;
  return f;
}

std::vector<double> random_features(std::uint64_t seed, std::int64_t step) {
  std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(step)));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> f(kFeatureSize);
  for (double& v : f) v = dist(rng);
  return f;
}

}  // namespace sdcdrive
