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

#include "sdcdrive/sdc/sdc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sdcdrive {
namespace {

constexpr double kHalfCoverage = 0.5 * kSdcCoverage;
constexpr double kMaxIndex = kSdcSize - 1;

void check_inputs(const SemanticImage& sem, const DepthMap& depth, const ProjectionTable& table) {
  if (sem.rows() != depth.rows() || sem.cols() != depth.cols()) {
    throw std::invalid_argument("project_sdc: semantic and depth images differ in size");
  }
  if (table.tx.size() != static_cast<std::size_t>(depth.cols())) {
    throw std::invalid_argument("project_sdc: projection table width does not match the image");
  }
}

// Cell key for a pixel, or -1 when the pixel is not projected.
int pixel_cell(const SemanticImage& sem, const DepthMap& depth, const ProjectionTable& table, int r, int c) {
  const int cls = sem(r, c);
  if (!is_valid_class(cls)) throw std::invalid_argument("project_sdc: invalid class id " + std::to_string(cls));
  if (cls == class_id(SemanticClass::kSky)) return -1;
  const double d = depth(r, c);
  const int pz = pz_index(d);
  if (pz == kOutOfRange) return -1;
  const int px = px_index(d, table.tx[static_cast<std::size_t>(c)]);
  if (px == kOutOfRange) return -1;
  return pz * kSdcSize + px;
}

void draw_disc(RgbImage& img, Cell center, int radius, bool hollow, Rgb color) {
  const int r0 = std::clamp(center.row, 0, kSdcSize - 1);
  const int c0 = std::clamp(center.col, 0, kSdcSize - 1);
  const int outer = radius * radius;
  const int inner = (radius - 1) * (radius - 1);
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      const int d2 = dr * dr + dc * dc;
      if (d2 > outer || (hollow && d2 <= inner)) continue;
      if (img.contains(r0 + dr, c0 + dc)) img(r0 + dr, c0 + dc) = color;
    }
  }
}

}  // namespace

ProjectionTable ProjectionTable::from_camera(const CameraIntrinsics& cam) {
  cam.validate();
  ProjectionTable t;
  t.tx.resize(static_cast<std::size_t>(cam.width));
  for (int u = 0; u < cam.width; ++u) t.tx[static_cast<std::size_t>(u)] = (u - cam.cx) / cam.fx;
  return t;
}

int px_index(double depth, double tx) {
  const double v = std::floor((depth * tx + kHalfCoverage) / kSdcCoverage * kMaxIndex + 0.5);
  if (!(v >= 0.0 && v <= kMaxIndex)) return kOutOfRange;
  return static_cast<int>(v);
}

int pz_index(double depth) {
  if (!(depth >= 0.0 && depth <= kSdcCoverage)) return kOutOfRange;
  const double v = std::floor((1.0 - depth / kSdcCoverage) * kMaxIndex + 0.5);
  if (!(v >= 0.0 && v <= kMaxIndex)) return kOutOfRange;
  return static_cast<int>(v);
}

Grid<int> compute_px(const DepthMap& depth, const ProjectionTable& table) {
  if (table.tx.size() != static_cast<std::size_t>(depth.cols())) {
    throw std::invalid_argument("compute_px: projection table width does not match the image");
  }
  Grid<int> out(depth.rows(), depth.cols());
  for (int r = 0; r < depth.rows(); ++r) {
    for (int c = 0; c < depth.cols(); ++c) out(r, c) = px_index(depth(r, c), table.tx[static_cast<std::size_t>(c)]);
  }
  return out;
}

Grid<int> compute_pz(const DepthMap& depth) {
  Grid<int> out(depth.rows(), depth.cols());
  for (int r = 0; r < depth.rows(); ++r) {
    for (int c = 0; c < depth.cols(); ++c) out(r, c) = pz_index(depth(r, c));
  }
  return out;
}

Cell local_to_cell(LocalPoint p) {
  // Clamped well outside the grid so far-away points still convert safely.
  const auto to_index = [](double v) { return static_cast<int>(std::clamp(std::floor(v + 0.5), -1e6, 1e6)); };
  return {to_index((1.0 - p.y / kSdcCoverage) * kMaxIndex), to_index((p.x + kHalfCoverage) / kSdcCoverage * kMaxIndex)};
}

int SdcTensor::label(int row, int col) const {
  for (int ch = 0; ch < kNumClasses; ++ch) {
    if (data_[index(ch, row, col)]) return ch;
  }
  return -1;
}

void SdcTensor::set_label(int row, int col, int cls) {
  if (row < 0 || row >= kSdcSize || col < 0 || col >= kSdcSize) throw std::out_of_range("SDC cell out of range");
  if (!is_valid_class(cls)) throw std::invalid_argument("SDC class out of range");
  for (int ch = 0; ch < kNumClasses; ++ch) data_[index(ch, row, col)] = 0;
  data_[index(cls, row, col)] = 1;
}

std::size_t SdcTensor::count_set() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

Tensor SdcTensor::to_tensor() const {
  return Tensor::from_u8({kNumClasses, kSdcSize, kSdcSize}, data_);
}

SdcTensor SdcTensor::from_tensor(const Tensor& t) {
  const std::vector<std::uint32_t> shape{kNumClasses, kSdcSize, kSdcSize};
  if (t.dtype != DType::kU8 || t.shape != shape) throw std::invalid_argument("tensor is not a 23x256x256 u8 SDC");
  SdcTensor out;
  out.data_ = t.to_u8();
  for (int r = 0; r < kSdcSize; ++r) {
    for (int c = 0; c < kSdcSize; ++c) {
      int sum = 0;
      for (int ch = 0; ch < kNumClasses; ++ch) {
        const auto v = out.data_[index(ch, r, c)];
        if (v > 1) throw std::invalid_argument("SDC tensor is not binary");
        sum += v;
      }
      if (sum > 1) throw std::invalid_argument("SDC tensor cell holds more than one class");
    }
  }
  return out;
}

SdcTensor project_sdc(const SemanticImage& sem, const DepthMap& depth, const ProjectionTable& table) {
  check_inputs(sem, depth, table);
  constexpr int kEmpty = std::numeric_limits<int>::max();
  const int rows = depth.rows();
  const int cols = depth.cols();
  // Winner key per cell: image row * cols + column, min-reduced.
  std::vector<int> winner(static_cast<std::size_t>(kSdcSize) * kSdcSize, kEmpty);
#pragma omp parallel
  {
    std::vector<int> local(winner.size(), kEmpty);
#pragma omp for schedule(static) nowait
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const int cell = pixel_cell(sem, depth, table, r, c);
        if (cell < 0) continue;
        const int key = r * cols + c;
        int& slot = local[static_cast<std::size_t>(cell)];
        if (key < slot) slot = key;
      }
    }
#pragma omp critical(sdc_merge)
    for (std::size_t i = 0; i < winner.size(); ++i) winner[i] = std::min(winner[i], local[i]);
  }
  SdcTensor out;
  for (int cell = 0; cell < kSdcSize * kSdcSize; ++cell) {
    const int key = winner[static_cast<std::size_t>(cell)];
    if (key == kEmpty) continue;
    out.set_label(cell / kSdcSize, cell % kSdcSize, sem(key / cols, key % cols));
  }
  return out;
}

SdcTensor project_sdc_serial(const SemanticImage& sem, const DepthMap& depth, const ProjectionTable& table) {
  check_inputs(sem, depth, table);
  std::vector<bool> taken(static_cast<std::size_t>(kSdcSize) * kSdcSize, false);
  SdcTensor out;
  for (int r = 0; r < depth.rows(); ++r) {
    for (int c = 0; c < depth.cols(); ++c) {
      const int cell = pixel_cell(sem, depth, table, r, c);
      if (cell < 0 || taken[static_cast<std::size_t>(cell)]) continue;
      taken[static_cast<std::size_t>(cell)] = true;
      out.set_label(cell / kSdcSize, cell % kSdcSize, sem(r, c));
    }
  }
  return out;
}

RgbImage rasterize_markers(const SdcTensor& sdc, std::optional<LocalPoint> route,
                           std::span<const LocalPoint> waypoints) {
  RgbImage img(kSdcSize, kSdcSize);
  for (int r = 0; r < kSdcSize; ++r) {
    for (int c = 0; c < kSdcSize; ++c) {
      const int cls = sdc.label(r, c);
      if (cls >= 0) img(r, c) = class_color(cls);
    }
  }
  for (const LocalPoint& wp : waypoints) {
    draw_disc(img, local_to_cell(wp), kWaypointMarkerRadius, /*hollow=*/false, kWaypointMarkerColor);
  }
  if (route) draw_disc(img, local_to_cell(*route), kRouteMarkerRadius, /*hollow=*/true, kRouteMarkerColor);
  return img;
}

}  // namespace sdcdrive
