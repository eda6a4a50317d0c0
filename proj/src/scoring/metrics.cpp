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

#include "sdcdrive/scoring/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdcdrive {
namespace {

void check_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": size mismatch");
}

}  // namespace

double iou(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> gt) {
  check_same_size(pred.size(), gt.size(), "iou");
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] != 0;
    const bool g = gt[i] != 0;
    inter += p && g;
    uni += p || g;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double accuracy(std::span<const double> pred, std::span<const double> gt) {
  check_same_size(pred.size(), gt.size(), "accuracy");
  if (pred.empty()) throw std::invalid_argument("accuracy: empty input");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) correct += (pred[i] >= 0.5) == (gt[i] >= 0.5);
  return static_cast<double>(correct) / static_cast<double>(pred.size());
}

double bce_term(std::span<const double> pred, std::span<const double> gt) {
  check_same_size(pred.size(), gt.size(), "seg_loss");
  if (pred.empty()) throw std::invalid_argument("seg_loss: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = std::clamp(pred[i], kSegEpsilon, 1.0 - kSegEpsilon);
    sum += gt[i] * std::log(p) + (1.0 - gt[i]) * std::log(1.0 - p);
  }
  return -sum / static_cast<double>(pred.size());
}

double dice_term(std::span<const double> pred, std::span<const double> gt) {
  check_same_size(pred.size(), gt.size(), "seg_loss");
  double inter = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    inter += pred[i] * gt[i];
    total += pred[i] + gt[i];
  }
  return total == 0.0 ? 0.0 : 1.0 - 2.0 * inter / total;
}

double seg_loss(std::span<const double> pred, std::span<const double> gt) {
  return bce_term(pred, gt) + dice_term(pred, gt);
}

double mae(std::span<const double> pred, std::span<const double> gt) {
  check_same_size(pred.size(), gt.size(), "mae");
  if (pred.empty()) throw std::invalid_argument("mae: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += std::abs(pred[i] - gt[i]);
  return sum / static_cast<double>(pred.size());
}

double total_loss(const TaskLosses& losses, const std::array<double, 7>& alpha) {
  double t = 0.0;
  for (std::size_t k = 0; k < losses.size(); ++k) t += alpha[k] * losses[k];
  return t;
}

}  // namespace sdcdrive

namespace sdcdrive {

void MetricAccumulator::add_segmentation(const SemanticImage& pred, const SemanticImage& gt) {
  if (pred.rows() != gt.rows() || pred.cols() != gt.cols()) {
    throw std::invalid_argument("segmentation frames differ in size");
  }
  const auto p = pred.data();
  const auto g = gt.data();
  const std::size_t n = p.size();
  std::vector<double> p_hot(static_cast<std::size_t>(kNumClasses) * n, 0.0);
  std::vector<double> g_hot(p_hot.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_valid_class(p[i]) || !is_valid_class(g[i])) throw std::invalid_argument("invalid class id in frame");
    p_hot[p[i] * n + i] = 1.0;
    g_hot[g[i] * n + i] = 1.0;
    if (p[i] == g[i]) {
      ++inter_[p[i]];
      ++union_[p[i]];
    } else {
      ++union_[p[i]];
      ++union_[g[i]];
    }
  }
  seg_loss_sum_ += seg_loss(p_hot, g_hot);
  ++seg_frames_;
}

void MetricAccumulator::add_flags(double pred_tl, double gt_tl, double pred_ss, double gt_ss) {
  tl_pred_.push_back(pred_tl);
  tl_gt_.push_back(gt_tl);
  ss_pred_.push_back(pred_ss);
  ss_gt_.push_back(gt_ss);
}

void MetricAccumulator::add_controls(const VehicularControls& pred, const VehicularControls& gt) {
  st_pred_.push_back(pred.steering);
  st_gt_.push_back(gt.steering);
  th_pred_.push_back(pred.throttle);
  th_gt_.push_back(gt.throttle);
  br_pred_.push_back(pred.brake);
  br_gt_.push_back(gt.brake);
}

void MetricAccumulator::add_waypoints(std::span<const double> pred, std::span<const double> gt) {
  if (pred.size() != 6 || gt.size() != 6) throw std::invalid_argument("waypoints must have six coordinates");
  wp_pred_.insert(wp_pred_.end(), pred.begin(), pred.end());
  wp_gt_.insert(wp_gt_.end(), gt.begin(), gt.end());
}

void MetricAccumulator::merge(const MetricAccumulator& other) {
  for (std::size_t c = 0; c < inter_.size(); ++c) {
    inter_[c] += other.inter_[c];
    union_[c] += other.union_[c];
  }
  seg_loss_sum_ += other.seg_loss_sum_;
  seg_frames_ += other.seg_frames_;
  const auto append = [](std::vector<double>& a, const std::vector<double>& b) { a.insert(a.end(), b.begin(), b.end()); };
  append(tl_pred_, other.tl_pred_);
  append(tl_gt_, other.tl_gt_);
  append(ss_pred_, other.ss_pred_);
  append(ss_gt_, other.ss_gt_);
  append(st_pred_, other.st_pred_);
  append(st_gt_, other.st_gt_);
  append(th_pred_, other.th_pred_);
  append(th_gt_, other.th_gt_);
  append(br_pred_, other.br_pred_);
  append(br_gt_, other.br_gt_);
  append(wp_pred_, other.wp_pred_);
  append(wp_gt_, other.wp_gt_);
}

MetricReport MetricAccumulator::report(const std::array<double, 7>& alpha) const {
  if (tl_pred_.empty() || st_pred_.empty() || wp_pred_.empty()) {
    throw std::invalid_argument("no frames to report metrics over");
  }
  MetricReport r;
  double iou_sum = 0.0;
  int present = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    r.iou_per_class[cu] = union_[cu] == 0 ? 1.0 : static_cast<double>(inter_[cu]) / static_cast<double>(union_[cu]);
    if (union_[cu] > 0) {
      iou_sum += r.iou_per_class[cu];
      ++present;
    }
  }
  r.mean_iou = present == 0 ? 1.0 : iou_sum / present;
  r.accuracy_tl = accuracy(tl_pred_, tl_gt_);
  r.accuracy_ss = accuracy(ss_pred_, ss_gt_);
  r.mae_steering = mae(st_pred_, st_gt_);
  r.mae_throttle = mae(th_pred_, th_gt_);
  r.mae_brake = mae(br_pred_, br_gt_);
  r.mae_waypoints = mae(wp_pred_, wp_gt_);
  r.losses = {seg_frames_ == 0 ? 0.0 : seg_loss_sum_ / static_cast<double>(seg_frames_),
              mae(tl_pred_, tl_gt_),
              mae(ss_pred_, ss_gt_),
              r.mae_steering,
              r.mae_throttle,
              r.mae_brake,
              r.mae_waypoints};
  r.total = total_loss(r.losses, alpha);
  r.frames = tl_pred_.size();
  return r;
}

}  // namespace sdcdrive
