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

// Parallel kernels against their serial references.
#include <random>

#include <benchmark/benchmark.h>

#include "sdcdrive/common/classes.hpp"
#include "sdcdrive/sdc/sdc.hpp"
#include "sdcdrive/sensor/camera.hpp"
#include "sdcdrive/sensor/render.hpp"
#include "sdcdrive/world/map_io.hpp"
#include "sdcdrive/world/world.hpp"

namespace sdcdrive {
namespace {

struct Frame {
  SemanticImage sem{256, 256, 0};
  DepthMap depth{256, 256, 0.0};
};

const Frame& random_frame() {
  static const Frame frame = [] {
    Frame f;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> cls(0, kNumClasses - 1);
    std::uniform_real_distribution<double> d(0.0, 80.0);
    for (int r = 0; r < 256; ++r) {
      for (int c = 0; c < 256; ++c) {
        f.sem(r, c) = static_cast<std::uint8_t>(cls(rng));
        f.depth(r, c) = d(rng);
      }
    }
    return f;
  }();
  return frame;
}

const WorldState& demo_world() {
  static const WorldState world = [] {
    const std::string data = SDCDRIVE_DATA_DIR;
    auto map = load_map(data + "/maps/intersection.json");
    auto route = load_route_set(data + "/routes/intersection.json").routes.at(0);
    return make_world(map, ScenarioConfig{}, route);
  }();
  return world;
}

void BM_ProjectSdc(benchmark::State& state) {
  const Frame& f = random_frame();
  const ProjectionTable table = ProjectionTable::from_camera({});
  for (auto _ : state) benchmark::DoNotOptimize(project_sdc(f.sem, f.depth, table));
}
BENCHMARK(BM_ProjectSdc)->Unit(benchmark::kMillisecond);

void BM_ProjectSdcSerial(benchmark::State& state) {
  const Frame& f = random_frame();
  const ProjectionTable table = ProjectionTable::from_camera({});
  for (auto _ : state) benchmark::DoNotOptimize(project_sdc_serial(f.sem, f.depth, table));
}
BENCHMARK(BM_ProjectSdcSerial)->Unit(benchmark::kMillisecond);

void BM_Render(benchmark::State& state) {
  const WorldState& w = demo_world();
  const CameraIntrinsics cam;
  for (auto _ : state) benchmark::DoNotOptimize(render_depth_semantic(w, cam));
}
BENCHMARK(BM_Render)->Unit(benchmark::kMillisecond);

void BM_RenderReference(benchmark::State& state) {
  const WorldState& w = demo_world();
  const CameraIntrinsics cam;
  for (auto _ : state) benchmark::DoNotOptimize(render_depth_semantic_reference(w, cam));
}
BENCHMARK(BM_RenderReference)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sdcdrive

BENCHMARK_MAIN();
