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

#include <array>
#include <span>
#include <vector>

#include "sdcdrive/common/classes.hpp"
#include "sdcdrive/common/controls.hpp"
#include "sdcdrive/common/grid.hpp"

namespace sdcdrive {

// |a & b| / |a | b| over binary masks; 1.0 when both are empty.
double iou(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> gt);

// Fraction of matching decisions after thresholding predictions at 0.5.
double accuracy(std::span<const double> pred, std::span<const double> gt);

inline constexpr double kSegEpsilon = 1e-7;

// Mean binary cross-entropy over all elements plus the dice term
// 1 - 2 sum(p*y) / (sum(p) + sum(y)); the dice term is 0 when both sums are 0.
double seg_loss(std::span<const double> pred, std::span<const double> gt);
double bce_term(std::span<const double> pred, std::span<const double> gt);
double dice_term(std::span<const double> pred, std::span<const double> gt);

double mae(std::span<const double> pred, std::span<const double> gt);

// Task order: SEG, TL, SS, ST, TH, BR, WP.
using TaskLosses = std::array<double, 7>;
double total_loss(const TaskLosses& losses, const std::array<double, 7>& alpha);

struct MetricReport {
  std::array<double, kNumClasses> iou_per_class{};
  double mean_iou = 0.0;
  double accuracy_tl = 0.0;
  double accuracy_ss = 0.0;
  double mae_steering = 0.0;
  double mae_throttle = 0.0;
  double mae_brake = 0.0;
  double mae_waypoints = 0.0;
  TaskLosses losses{};
  double total = 0.0;
  std::size_t frames = 0;
};

// Frame-by-frame accumulation of the task-wise metrics. IoU per class is
// dataset-level (intersections and unions summed over frames); the mean
// runs over classes that occur in either prediction or ground truth.
class MetricAccumulator {
 public:
  void add_segmentation(const SemanticImage& pred, const SemanticImage& gt);
  void add_flags(double pred_tl, double gt_tl, double pred_ss, double gt_ss);
  void add_controls(const VehicularControls& pred, const VehicularControls& gt);
  // Three (x, y) waypoints flattened to six values each.
  void add_waypoints(std::span<const double> pred, std::span<const double> gt);

  void merge(const MetricAccumulator& other);

  std::size_t frames() const { return tl_pred_.size(); }
  MetricReport report(const std::array<double, 7>& alpha) const;

 private:
  std::array<std::size_t, kNumClasses> inter_{};
  std::array<std::size_t, kNumClasses> union_{};
  double seg_loss_sum_ = 0.0;
  std::size_t seg_frames_ = 0;
  std::vector<double> tl_pred_, tl_gt_, ss_pred_, ss_gt_;
  std::vector<double> st_pred_, st_gt_, th_pred_, th_gt_, br_pred_, br_gt_;
  std::vector<double> wp_pred_, wp_gt_;
};

}  // namespace sdcdrive
