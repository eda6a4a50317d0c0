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

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "sdcdrive/common/classes.hpp"
#include "sdcdrive/sensor/camera.hpp"
#include "sdcdrive/sensor/depth_codec.hpp"
#include "sdcdrive/sensor/render.hpp"
#include "sdcdrive/sensor/weather.hpp"
#include "sdcdrive/world/map_io.hpp"
#include "sdcdrive/world/world.hpp"
#include "worlds.hpp"

namespace sdcdrive {
namespace {

constexpr std::uint8_t kSky = 13;
constexpr std::uint8_t kGround = 14;
constexpr std::uint8_t kRoad = 7;

WorldState world_facing_north(std::shared_ptr<WorldMap> map) {
  WorldState s = make_world(testing::freeze(std::move(map)), {}, nullptr);
  s.ego.pose = {0.0, 0.0, -90.0};
  return s;
}

Obstacle box_obstacle(Polygon footprint, double height, std::uint8_t cls) {
  Obstacle o;
  o.footprint = std::move(footprint);
  o.height = height;
  o.class_id = cls;
  return o;
}

TEST(Render, EmptyWorldSplitsAtHorizon) {
  const WorldState s = world_facing_north(std::make_shared<WorldMap>());
  const RenderOutput out = render_depth_semantic(s, {});
  for (int r = 0; r < 256; ++r) {
    for (int c = 0; c < 256; c += 17) {
      if (r < 128) {
        EXPECT_EQ(out.semantic(r, c), kSky) << r << "," << c;
        EXPECT_EQ(out.depth(r, c), 1000.0);
      } else {
        EXPECT_EQ(out.semantic(r, c), kGround) << r << "," << c;
        EXPECT_LT(out.depth(r, c), 1000.0);
      }
    }
  }
}

TEST(Render, GroundDepthMatchesFlatPlane) {
  const WorldState s = world_facing_north(testing::straight_map(100.0));
  const CameraIntrinsics cam;
  const RenderOutput out = render_depth_semantic(s, cam);
  for (int r : {130, 160, 200, 255}) {
    // Ray optical component is 1, vertical component -(r - cy)/fx.
    const double expected = cam.mount_height / ((r - cam.cy) / cam.fx);
    EXPECT_NEAR(out.depth(r, 128), expected, 1e-9) << r;
    EXPECT_EQ(out.semantic(r, 128), kRoad);
  }
}

TEST(Render, BoxDeadAheadCenterPixelDepth) {
  auto map = std::make_shared<WorldMap>();
  map->obstacles.push_back(box_obstacle({{-2, 20}, {2, 20}, {2, 22}, {-2, 22}}, 6.0, 1));
  const WorldState s = world_facing_north(map);
  const RenderOutput out = render_depth_semantic(s, {});
  // Front face is the plane y = 20, perpendicular to the optical axis.
  EXPECT_NEAR(out.depth(128, 128), 20.0, 1e-6);
  EXPECT_NEAR(out.depth(127, 127), 20.0, 1e-6);
  EXPECT_EQ(out.semantic(128, 128), 1);
}

TEST(Render, SlantedFaceMatchesRayPlaneIntersection) {
  // Diamond whose near faces are tilted 45 degrees to the optical axis.
  auto map = std::make_shared<WorldMap>();
  map->obstacles.push_back(box_obstacle({{0, 15}, {5, 20}, {0, 25}, {-5, 20}}, 10.0, 11));
  const WorldState s = world_facing_north(map);
  const CameraIntrinsics cam;
  const RenderOutput out = render_depth_semantic(s, cam);
  for (int col : {100, 127, 140, 150}) {
    const int row = 128;
    // At unit z-depth the ray is at (a, 1). Near faces: y - x = 15 on the
    // right, y + x = 15 on the left.
    const double a = (col - cam.cx) / cam.fx;
    const double t = a >= 0.0 ? 15.0 / (1.0 - a) : 15.0 / (1.0 + a);
    EXPECT_NEAR(out.depth(row, col), t, 1e-6) << col;
    EXPECT_EQ(out.semantic(row, col), 11);
  }
}

TEST(Render, NoHitReadsMaxRange) {
  const WorldState s = world_facing_north(std::make_shared<WorldMap>());
  CameraIntrinsics cam;
  cam.max_range = 300.0;
  const RenderOutput out = render_depth_semantic(s, cam);
  // Rows just below the horizon hit the ground beyond 300 m.
  EXPECT_EQ(out.depth(128, 10), 300.0);
  EXPECT_EQ(out.semantic(128, 10), kSky);
  EXPECT_EQ(out.depth(0, 0), 300.0);
}

TEST(Render, CropOfFullRenderIsIdentical) {
  const auto map = load_map(std::string(SDCDRIVE_DATA_DIR) + "/maps/straight_two_turn.json");
  const RouteSet set = load_route_set(std::string(SDCDRIVE_DATA_DIR) + "/routes/straight_two_turn.json");
  WorldState s = make_world(map, {}, set.routes[0]);
  const CameraIntrinsics cam;
  const RenderOutput full = render_full(s, cam);
  EXPECT_EQ(full.depth.rows(), 300);
  EXPECT_EQ(full.depth.cols(), 400);
  const RenderOutput crop = crop_center(full, cam);
  const RenderOutput direct = render_depth_semantic(s, cam);
  EXPECT_EQ(crop.depth, direct.depth);
  EXPECT_EQ(crop.semantic, direct.semantic);
  EXPECT_EQ(crop.depth(0, 0), full.depth(22, 72));
}

TEST(Render, ParallelMatchesSerialReference) {
  const auto map = load_map(std::string(SDCDRIVE_DATA_DIR) + "/maps/intersection.json");
  const RouteSet set = load_route_set(std::string(SDCDRIVE_DATA_DIR) + "/routes/intersection.json");
  ScenarioConfig sc;
  sc.kind = ScenarioKind::k1WA;
  WorldState s = make_world(map, sc, set.routes[0]);
  // Let the scripted car enter the scene.
  for (int i = 0; i < 150; ++i) s = step_world(s, {0.0, 0.3, 0.0}, 0.05);
  for (double pitch : {0.0, -5.0, 3.0}) {
    CameraIntrinsics cam;
    cam.pitch_deg = pitch;
    const RenderOutput fast = render_depth_semantic(s, cam);
    const RenderOutput ref = render_depth_semantic_reference(s, cam);
    EXPECT_EQ(fast.depth, ref.depth) << "pitch " << pitch;
    EXPECT_EQ(fast.semantic, ref.semantic) << "pitch " << pitch;
  }
}

TEST(Render, ScenePrismsIncludeActorsAndPoles) {
  const auto map = load_map(std::string(SDCDRIVE_DATA_DIR) + "/maps/intersection.json");
  const WorldState s = make_world(map, {}, nullptr);
  const auto prisms = scene_prisms(s);
  // Obstacles, one pole per light and per stop sign, one prism per actor.
  EXPECT_EQ(prisms.size(), map->obstacles.size() + map->lights.size() + map->stop_signs.size() + s.actors.size());
}

TEST(Render, IntersectPrismMissAndTop) {
  const Prism p{{{-1, 9}, {1, 9}, {1, 11}, {-1, 11}}, 2.0, 1};
  EXPECT_NEAR(intersect_prism(p, {0, 0}, 1.0, {0, 1}, 0.0), 9.0, 1e-12);
  EXPECT_LT(intersect_prism(p, {0, 0}, 1.0, {1, 0}, 0.0), 0.0);
  // From above, looking down onto the roof at (0, 10).
  EXPECT_NEAR(intersect_prism(p, {0, 0}, 12.0, {0, 1}, -1.0), 10.0, 1e-12);
}

TEST(Camera, RejectsBadIntrinsics) {
  CameraIntrinsics cam;
  cam.fx = 0.0;
  EXPECT_THROW(cam.validate(), std::invalid_argument);
  cam = {};
  cam.width = 500;
  EXPECT_THROW(cam.validate(), std::invalid_argument);
}

TEST(DepthCodec, Anchors) {
  EXPECT_EQ(decode_depth({0, 0, 0}), 0.0);
  EXPECT_EQ(decode_depth({255, 255, 255}), 1000.0);
  EXPECT_DOUBLE_EQ(decode_depth({1, 0, 0}), 1000.0 / 16777215.0);
  EXPECT_EQ(encode_depth(0.0), (EncodedDepthPixel{0, 0, 0}));
  EXPECT_EQ(encode_depth(1000.0), (EncodedDepthPixel{255, 255, 255}));
  EXPECT_EQ(encode_depth(1000.0 / 16777215.0), (EncodedDepthPixel{1, 0, 0}));
}

TEST(DepthCodec, ChannelWeights) {
  // R is the least significant byte.
  EXPECT_DOUBLE_EQ(decode_depth({0, 1, 0}), 256.0 * 1000.0 / 16777215.0);
  EXPECT_DOUBLE_EQ(decode_depth({0, 0, 1}), 65536.0 * 1000.0 / 16777215.0);
}

TEST(DepthCodec, RoundTripErrorWithinOneCode) {
  const double step = 1000.0 / 16777215.0;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  double worst = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double d = u(rng);
    worst = std::max(worst, std::fabs(decode_depth(encode_depth(d)) - d));
  }
  EXPECT_LE(worst, step);
  // Nearest-code rounding keeps the error within half a code.
  EXPECT_LE(worst, 0.5 * step + 1e-12);
}

TEST(DepthCodec, RejectsOutOfRange) {
  EXPECT_THROW(encode_depth(-0.001), std::domain_error);
  EXPECT_THROW(encode_depth(1000.5), std::domain_error);
  EXPECT_THROW(encode_depth(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST(DepthCodec, MapIsChannelFirst) {
  DepthMap d(2, 3, 0.0);
  d(1, 2) = decode_depth({10, 20, 30});
  const auto rgb = encode_depth_map(d);
  ASSERT_EQ(rgb.size(), 18u);
  EXPECT_EQ(rgb[0 * 6 + 5], 10);
  EXPECT_EQ(rgb[1 * 6 + 5], 20);
  EXPECT_EQ(rgb[2 * 6 + 5], 30);
  EXPECT_EQ(decode_depth_map(rgb, 2, 3), d);
  EXPECT_THROW(decode_depth_map(rgb, 3, 3), std::invalid_argument);
}

TEST(Weather, FourteenPresetsClearFirst) {
  const auto presets = weather_presets();
  ASSERT_EQ(presets.size(), 14u);
  EXPECT_EQ(presets[0].name, "ClearNoon");
  EXPECT_EQ(weather_names().size(), 14u);
  EXPECT_EQ(weather_preset("HardRainNoon").name, "HardRainNoon");
  EXPECT_THROW(weather_preset("Snow"), std::invalid_argument);
}

class WeatherImages : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 200.0);
    for (int r = 0; r < 64; ++r) {
      for (int c = 0; c < 64; ++c) {
        depth(r, c) = u(rng);
        sem(r, c) = static_cast<std::uint8_t>((r + c) % 23);
      }
    }
  }
  DepthMap depth{64, 64};
  SemanticImage sem{64, 64};
};

TEST_F(WeatherImages, ClearNoonIsIdentity) {
  DepthMap d = depth;
  SemanticImage s = sem;
  apply_weather(d, s, weather_preset("ClearNoon"), 99);
  EXPECT_EQ(d, depth);
  EXPECT_EQ(s, sem);
}

TEST_F(WeatherImages, FullFlipUnlabelsEverything) {
  DepthMap d = depth;
  SemanticImage s = sem;
  apply_weather(d, s, {"flip", 0.0, 1.0, 0.0}, 3);
  for (auto v : s.data()) EXPECT_EQ(v, 0);
  EXPECT_EQ(d, depth);
}

TEST_F(WeatherImages, SeededNoiseIsReproducibleAndBounded) {
  const WeatherPreset p{"noisy", 0.5, 0.1, 0.05};
  DepthMap d1 = depth, d2 = depth, d3 = depth;
  SemanticImage s1 = sem, s2 = sem, s3 = sem;
  apply_weather(d1, s1, p, 42);
  apply_weather(d2, s2, p, 42);
  apply_weather(d3, s3, p, 43);
  EXPECT_EQ(d1, d2);
  EXPECT_EQ(s1, s2);
  EXPECT_NE(d1, d3);
  int dropped = 0;
  for (double v : d1.data()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1000.0);
    dropped += v == 1000.0;
  }
  EXPECT_GT(dropped, 0);
}

TEST(Weather, PresetValidation) {
  EXPECT_THROW((WeatherPreset{"x", -1.0, 0.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((WeatherPreset{"x", 0.0, 1.5, 0.0}.validate()), std::invalid_argument);
}

}  // namespace
}  // namespace sdcdrive
