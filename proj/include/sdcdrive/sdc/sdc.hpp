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
#include <optional>
#include <span>
#include <vector>

#include "sdcdrive/common/classes.hpp"
#include "sdcdrive/common/grid.hpp"
#include "sdcdrive/common/tensor_io.hpp"
#include "sdcdrive/control/transform.hpp"
#include "sdcdrive/sensor/camera.hpp"

namespace sdcdrive {

// BEV grid: 256x256 cells over 64 m forward x 64 m lateral, ego at the
// bottom-centre (row 255, column 128).
inline constexpr int kSdcSize = 256;
inline constexpr double kSdcCoverage = 64.0;
inline constexpr double kSdcCellSize = kSdcCoverage / kSdcSize;
inline constexpr int kOutOfRange = -1;

// Lateral meters per meter of depth for every image column.
struct ProjectionTable {
  std::vector<double> tx;

  static ProjectionTable from_camera(const CameraIntrinsics& cam);
};

// Column index round((d * tx + 32) / 64 * 255) with ties rounded up, or
// kOutOfRange when it falls outside [0, 255].
int px_index(double depth, double tx);
// Row index round((1 - d / 64) * 255), or kOutOfRange beyond 64 m.
int pz_index(double depth);

Grid<int> compute_px(const DepthMap& depth, const ProjectionTable& table);
Grid<int> compute_pz(const DepthMap& depth);

// Cell of a BEV-frame point under the same mapping, not range-checked.
struct Cell {
  int row = 0;
  int col = 0;
};
Cell local_to_cell(LocalPoint p);

// One-hot 23-channel occupancy, channel-major.
class SdcTensor {
 public:
  SdcTensor() : data_(static_cast<std::size_t>(kNumClasses) * kSdcSize * kSdcSize, 0) {}

  std::uint8_t at(int channel, int row, int col) const { return data_[index(channel, row, col)]; }
  // Class held by a cell, or -1 for an empty cell.
  int label(int row, int col) const;
  void set_label(int row, int col, int cls);

  std::span<const std::uint8_t> data() const { return data_; }
  std::size_t count_set() const;
  bool operator==(const SdcTensor&) const = default;

  Tensor to_tensor() const;
  static SdcTensor from_tensor(const Tensor& t);

 private:
  static std::size_t index(int channel, int row, int col) {
    return (static_cast<std::size_t>(channel) * kSdcSize + static_cast<std::size_t>(row)) * kSdcSize +
           static_cast<std::size_t>(col);
  }
  std::vector<std::uint8_t> data_;
};

// Every non-sky pixel with both indices in range writes its class to its
// cell. When pixels collide the one highest in the image (smallest row, then
// smallest column) wins. Parallel over image rows.
SdcTensor project_sdc(const SemanticImage& sem, const DepthMap& depth, const ProjectionTable& table);

// Row-major, single-threaded, first writer wins. Reference for project_sdc.
SdcTensor project_sdc_serial(const SemanticImage& sem, const DepthMap& depth, const ProjectionTable& table);

// Colour composite of the grid with a white hollow circle at the route point
// and small filled circles at the waypoints; markers outside the grid are
// pulled onto its border.
RgbImage rasterize_markers(const SdcTensor& sdc, std::optional<LocalPoint> route,
                           std::span<const LocalPoint> waypoints);

inline constexpr Rgb kRouteMarkerColor{255, 255, 255};
inline constexpr Rgb kWaypointMarkerColor{255, 200, 0};
inline constexpr int kRouteMarkerRadius = 4;
inline constexpr int kWaypointMarkerRadius = 2;

}  // namespace sdcdrive
