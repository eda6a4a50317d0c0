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

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace sdcdrive {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  bool operator==(const Vec2&) const = default;

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

struct Segment {
  Vec2 a, b;
};

using Polygon = std::vector<Vec2>;

struct Aabb {
  Vec2 lo{1e300, 1e300};
  Vec2 hi{-1e300, -1e300};

  void expand(Vec2 p);
  bool contains(Vec2 p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  bool overlaps(const Aabb& o) const {
    return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y;
  }
};

Aabb bounds(std::span<const Vec2> pts);

// Even-odd crossing test; boundary points may land either way.
bool point_in_polygon(Vec2 p, std::span<const Vec2> poly);

bool segments_intersect(const Segment& s, const Segment& t);

// Parameter along s (0..1) at which s crosses t, if it does.
std::optional<double> segment_crossing(const Segment& s, const Segment& t);

double distance_to_segment(Vec2 p, const Segment& s);

// True when the two simple polygons overlap (edge crossing or containment).
bool polygons_intersect(std::span<const Vec2> a, std::span<const Vec2> b);

// Axis-aligned-in-body rectangle centred at `center`, long side along `forward`.
Polygon oriented_box(Vec2 center, Vec2 forward, double length, double width);

// Closed polygon around a polyline at +/- half_width (a road strip).
Polygon strip_polygon(std::span<const Vec2> centerline, double half_width);

// Polyline with cumulative arc length, used for reference paths.
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Vec2> points);

  const std::vector<Vec2>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  double arc_at(std::size_t i) const { return cumulative_[i]; }

  // Point at arc length s, clamped to [0, length].
  Vec2 point_at(double s) const;
  // Unit tangent at arc length s.
  Vec2 tangent_at(double s) const;

  struct Projection {
    double s = 0.0;
    double distance = 0.0;
    Vec2 point;
  };
  // Closest point restricted to the arc-length window [s_lo, s_hi].
  Projection project(Vec2 p, double s_lo, double s_hi) const;
  Projection project(Vec2 p) const { return project(p, 0.0, length()); }

  // Insert points so no segment is longer than max_spacing.
  Polyline densified(double max_spacing) const;

 private:
  std::size_t segment_index(double s) const;

  std::vector<Vec2> points_;
  std::vector<double> cumulative_;
};

}  // namespace sdcdrive
