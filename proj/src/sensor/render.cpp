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

#include "sdcdrive/sensor/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdcdrive/common/classes.hpp"

namespace sdcdrive {
namespace {

constexpr double kLightPoleSize = 0.3;
constexpr double kLightPoleHeight = 4.0;
constexpr double kSignPoleSize = 0.3;
constexpr double kSignPoleHeight = 2.2;

Polygon square(Vec2 c, double size) {
  const double h = 0.5 * size;
  return {{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}};
}

struct Ray {
  Vec2 dir_h;
  double dir_z;
};

class RayCaster {
 public:
  RayCaster(const WorldState& world, const CameraIntrinsics& cam, bool cull)
      : world_(world), cam_(cam), pose_(camera_pose(world.ego.pose, cam)), prisms_(scene_prisms(world)) {
    cam.validate();
    cx_full_ = cam.cx + cam.crop_col_offset();
    cy_full_ = cam.cy + cam.crop_row_offset();
    sin_p_ = std::sin(pose_.pitch_rad);
    cos_p_ = std::cos(pose_.pitch_rad);
    col_lo_.assign(prisms_.size(), std::numeric_limits<int>::min());
    col_hi_.assign(prisms_.size(), std::numeric_limits<int>::max());
    // With a level camera a column is a fixed horizontal bearing, so a
    // prism fully in front can only be seen between its extreme vertex
    // bearings.
    if (cull && pose_.pitch_rad == 0.0) {
      for (std::size_t i = 0; i < prisms_.size(); ++i) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        bool in_front = true;
        for (const Vec2& v : prisms_[i].footprint) {
          const Vec2 rel = v - pose_.position;
          const double fwd = rel.dot(pose_.forward);
          if (fwd <= 1e-6) {
            in_front = false;
            break;
          }
          const double u = cx_full_ + cam.fx * rel.dot(pose_.right) / fwd;
          lo = std::min(lo, u);
          hi = std::max(hi, u);
        }
        if (!in_front) continue;
        col_lo_[i] = static_cast<int>(std::max(-1e9, std::floor(lo))) - 1;
        col_hi_[i] = static_cast<int>(std::min(1e9, std::ceil(hi))) + 1;
      }
    }
  }

  Ray ray(int row, int col) const {
    const double a = (col - cx_full_) / cam_.fx;
    const double b = (row - cy_full_) / cam_.fx;
    const double k = b * sin_p_ + cos_p_;
    return {pose_.right * a + pose_.forward * k, sin_p_ - b * cos_p_};
  }

  void shade(int row, int col, double& depth, std::uint8_t& cls) const {
    const Ray r = ray(row, col);
    double best = cam_.max_range;
    int hit = -1;  // -1 none, -2 ground, else prism index
    if (r.dir_z < 0.0) {
      const double t = pose_.height / -r.dir_z;
      if (t <= best) {
        best = t;
        hit = -2;
      }
    }
    for (std::size_t i = 0; i < prisms_.size(); ++i) {
      if (col < col_lo_[i] || col > col_hi_[i]) continue;
      const double t = intersect_prism(prisms_[i], pose_.position, pose_.height, r.dir_h, r.dir_z);
      if (t >= 0.0 && t < best) {
        best = t;
        hit = static_cast<int>(i);
      }
    }
    depth = best;
    if (hit == -1) {
      cls = class_id(SemanticClass::kSky);
    } else if (hit == -2) {
      const Vec2 p = pose_.position + r.dir_h * best;
      if (world_.map->on_road(p)) {
        cls = class_id(SemanticClass::kRoad);
      } else if (world_.map->on_sidewalk(p)) {
        cls = class_id(SemanticClass::kSidewalk);
      } else {
        cls = class_id(SemanticClass::kGround);
      }
    } else {
      cls = prisms_[static_cast<std::size_t>(hit)].class_id;
    }
  }

  RenderOutput render(int row0, int col0, int rows, int cols, bool parallel) const {
    RenderOutput out{DepthMap(rows, cols), SemanticImage(rows, cols)};
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) shade(row0 + r, col0 + c, out.depth(r, c), out.semantic(r, c));
      }
    } else {
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) shade(row0 + r, col0 + c, out.depth(r, c), out.semantic(r, c));
      }
    }
    return out;
  }

 private:
  const WorldState& world_;
  const CameraIntrinsics& cam_;
  CameraPose pose_;
  std::vector<Prism> prisms_;
  std::vector<int> col_lo_;
  std::vector<int> col_hi_;
  double cx_full_ = 0.0;
  double cy_full_ = 0.0;
  double sin_p_ = 0.0;
  double cos_p_ = 1.0;
};

}  // namespace

std::vector<Prism> scene_prisms(const WorldState& world) {
  std::vector<Prism> out;
  const WorldMap& map = *world.map;
  for (const Obstacle& o : map.obstacles) out.push_back({o.footprint, o.height, o.class_id});
  for (const TrafficLight& l : map.lights) {
    out.push_back({square(l.position, kLightPoleSize), kLightPoleHeight, class_id(SemanticClass::kTrafficLight)});
  }
  for (const StopSign& s : map.stop_signs) {
    out.push_back({square(s.position, kSignPoleSize), kSignPoleHeight, class_id(SemanticClass::kTrafficSign)});
  }
  for (const ActorState& a : world.actors) {
    const ActorDims dims = actor_dims(a.kind);
    out.push_back({a.footprint(), dims.height, dims.class_id});
  }
  return out;
}

double intersect_prism(const Prism& prism, Vec2 origin, double origin_z, Vec2 dir_h, double dir_z) {
  double best = -1.0;
  const auto& fp = prism.footprint;
  const std::size_t n = fp.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = fp[i];
    const Vec2 e = fp[(i + 1) % n] - a;
    const double denom = dir_h.cross(e);
    if (denom == 0.0) continue;
    const Vec2 w = a - origin;
    const double t = w.cross(e) / denom;
    const double s = w.cross(dir_h) / denom;
    if (t <= 0.0 || s < 0.0 || s > 1.0) continue;
    const double z = origin_z + t * dir_z;
    if (z < 0.0 || z > prism.height) continue;
    if (best < 0.0 || t < best) best = t;
  }
  if (dir_z < 0.0 && origin_z > prism.height) {
    const double t = (prism.height - origin_z) / dir_z;
    if ((best < 0.0 || t < best) && point_in_polygon(origin + dir_h * t, fp)) best = t;
  }
  return best;
}

RenderOutput render_full(const WorldState& world, const CameraIntrinsics& cam) {
  const RayCaster caster(world, cam, /*cull=*/true);
  return caster.render(0, 0, cam.render_height, cam.render_width, /*parallel=*/true);
}

RenderOutput render_depth_semantic(const WorldState& world, const CameraIntrinsics& cam) {
  const RayCaster caster(world, cam, /*cull=*/true);
  return caster.render(cam.crop_row_offset(), cam.crop_col_offset(), cam.height, cam.width, /*parallel=*/true);
}

RenderOutput render_depth_semantic_reference(const WorldState& world, const CameraIntrinsics& cam) {
  const RayCaster caster(world, cam, /*cull=*/false);
  return caster.render(cam.crop_row_offset(), cam.crop_col_offset(), cam.height, cam.width, /*parallel=*/false);
}

RenderOutput crop_center(const RenderOutput& full, const CameraIntrinsics& cam) {
  if (full.depth.rows() != cam.render_height || full.depth.cols() != cam.render_width) {
    throw std::invalid_argument("crop_center: render size does not match the camera");
  }
  const int r0 = cam.crop_row_offset();
  const int c0 = cam.crop_col_offset();
  RenderOutput out{DepthMap(cam.height, cam.width), SemanticImage(cam.height, cam.width)};
  for (int r = 0; r < cam.height; ++r) {
    for (int c = 0; c < cam.width; ++c) {
      out.depth(r, c) = full.depth(r0 + r, c0 + c);
      out.semantic(r, c) = full.semantic(r0 + r, c0 + c);
    }
  }
  return out;
}

}  // namespace sdcdrive
