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

#include "sdcdrive/common/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sdcdrive {

void Aabb::expand(Vec2 p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

Aabb bounds(std::span<const Vec2> pts) {
  Aabb box;
  for (const auto& p : pts) box.expand(p);
  return box;
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = (b - a).cross(c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Segment& s, const Segment& t) {
  const int o1 = orientation(s.a, s.b, t.a);
  const int o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a);
  const int o4 = orientation(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(s.a, s.b, t.a)) return true;
  if (o2 == 0 && on_segment(s.a, s.b, t.b)) return true;
  if (o3 == 0 && on_segment(t.a, t.b, s.a)) return true;
  if (o4 == 0 && on_segment(t.a, t.b, s.b)) return true;
  return false;
}

std::optional<double> segment_crossing(const Segment& s, const Segment& t) {
  const Vec2 r = s.b - s.a;
  const Vec2 q = t.b - t.a;
  const double denom = r.cross(q);
  if (denom == 0.0) return std::nullopt;
  const Vec2 w = t.a - s.a;
  const double u = w.cross(q) / denom;
  const double v = w.cross(r) / denom;
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return std::nullopt;
  return u;
}

double distance_to_segment(Vec2 p, const Segment& s) {
  const Vec2 d = s.b - s.a;
  const double len2 = d.dot(d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0);
  return distance(p, s.a + d * t);
}

bool polygons_intersect(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (a.empty() || b.empty()) return false;
  if (!bounds(a).overlaps(bounds(b))) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Segment ea{a[i], a[(i + 1) % a.size()]};
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(ea, {b[j], b[(j + 1) % b.size()]})) return true;
    }
  }
  return point_in_polygon(a.front(), b) || point_in_polygon(b.front(), a);
}

Polygon oriented_box(Vec2 center, Vec2 forward, double length, double width) {
  const Vec2 f = forward * (0.5 * length / forward.norm());
  const Vec2 side = Vec2{f.y, -f.x} * (width / length);
  return {center + f + side, center + f - side, center - f - side, center - f + side};
}

Polygon strip_polygon(std::span<const Vec2> centerline, double half_width) {
  if (centerline.size() < 2) throw std::invalid_argument("strip needs >= 2 points");
  std::vector<Vec2> left, right;
  const std::size_t n = centerline.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 dir;
    if (i == 0) {
      dir = centerline[1] - centerline[0];
    } else if (i == n - 1) {
      dir = centerline[n - 1] - centerline[n - 2];
    } else {
      const Vec2 d0 = centerline[i] - centerline[i - 1];
      const Vec2 d1 = centerline[i + 1] - centerline[i];
      dir = d0 * (1.0 / d0.norm()) + d1 * (1.0 / d1.norm());
    }
    dir = dir * (1.0 / dir.norm());
    const Vec2 normal{-dir.y, dir.x};
    left.push_back(centerline[i] + normal * half_width);
    right.push_back(centerline[i] - normal * half_width);
  }
  Polygon poly = left;
  poly.insert(poly.end(), right.rbegin(), right.rend());
  return poly;
}

Polyline::Polyline(std::vector<Vec2> points) : points_(std::move(points)) {
  cumulative_.reserve(points_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i > 0) acc += distance(points_[i - 1], points_[i]);
    cumulative_.push_back(acc);
  }
}

std::size_t Polyline::segment_index(double s) const {
  // Index i such that cumulative_[i] <= s < cumulative_[i + 1].
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t i = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  return std::min(i, points_.size() - 2);
}

Vec2 Polyline::point_at(double s) const {
  if (points_.empty()) return {};
  if (points_.size() == 1 || s <= 0.0) return points_.front();
  if (s >= length()) return points_.back();
  const std::size_t i = segment_index(s);
  const double seg = cumulative_[i + 1] - cumulative_[i];
  const double t = seg > 0.0 ? (s - cumulative_[i]) / seg : 0.0;
  return points_[i] + (points_[i + 1] - points_[i]) * t;
}

Vec2 Polyline::tangent_at(double s) const {
  if (points_.size() < 2) return {0.0, 1.0};
  const std::size_t i = segment_index(std::clamp(s, 0.0, length()));
  const Vec2 d = points_[i + 1] - points_[i];
  return d * (1.0 / d.norm());
}

Polyline::Projection Polyline::project(Vec2 p, double s_lo, double s_hi) const {
  Projection best{0.0, std::numeric_limits<double>::infinity(), {}};
  if (points_.empty()) return best;
  if (points_.size() == 1) return {0.0, distance(p, points_[0]), points_[0]};
  s_lo = std::clamp(s_lo, 0.0, length());
  s_hi = std::clamp(s_hi, s_lo, length());
  const std::size_t first = segment_index(s_lo);
  const std::size_t last = segment_index(s_hi);
  for (std::size_t i = first; i <= last; ++i) {
    const Vec2 a = points_[i];
    const Vec2 d = points_[i + 1] - a;
    const double len2 = d.dot(d);
    double t = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    double s = cumulative_[i] + t * std::sqrt(len2);
    if (s < s_lo || s > s_hi) {
      s = std::clamp(s, s_lo, s_hi);
      t = len2 > 0.0 ? (s - cumulative_[i]) / std::sqrt(len2) : 0.0;
    }
    const Vec2 q = a + d * t;
    const double dist = distance(p, q);
    if (dist < best.distance) best = {s, dist, q};
  }
  return best;
}

Polyline Polyline::densified(double max_spacing) const {
  if (points_.size() < 2) return *this;
  std::vector<Vec2> out{points_.front()};
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const Vec2 a = points_[i - 1];
    const Vec2 b = points_[i];
    const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a, b) / max_spacing)));
    for (int k = 1; k < pieces; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
    out.push_back(b);
  }
  return Polyline(std::move(out));
}

}  // namespace sdcdrive
