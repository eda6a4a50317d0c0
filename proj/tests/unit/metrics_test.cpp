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
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sdcdrive/scoring/metrics.hpp"

namespace sdcdrive {
namespace {

std::vector<std::uint8_t> to_u8(const std::vector<int>& v) { return {v.begin(), v.end()}; }

TEST(Iou, Examples) {
  const std::vector<std::uint8_t> a{1, 1, 0, 0}, b{0, 0, 1, 1}, p{1, 1, 0, 0}, g{0, 1, 1, 0};
  EXPECT_EQ(iou(a, a), 1.0);
  EXPECT_EQ(iou(a, b), 0.0);
  EXPECT_DOUBLE_EQ(iou(p, g), 1.0 / 3.0);
  const std::vector<std::uint8_t> empty(4, 0);
  EXPECT_EQ(iou(empty, empty), 1.0);
  EXPECT_THROW(iou(a, std::vector<std::uint8_t>(3)), std::invalid_argument);
}

TEST(Iou, MatchesNaiveOnRandomMasks) {
  std::mt19937_64 rng(1);
  std::bernoulli_distribution bit(0.3);
  for (int i = 0; i < 100; ++i) {
    std::vector<int> p(500), g(500);
    for (int k = 0; k < 500; ++k) {
      p[k] = bit(rng);
      g[k] = bit(rng);
    }
    EXPECT_NEAR(iou(to_u8(p), to_u8(g)), testing::naive_iou(p, g), 1e-9);
  }
}

TEST(Accuracy, Examples) {
  std::vector<double> pred(100, 0.0), gt(100, 0.0);
  for (int i = 0; i < 9; ++i) pred[i] = gt[i] = 1.0;  // TP 9
  pred[9] = 1.0;                                      // FP 1
  EXPECT_DOUBLE_EQ(accuracy(pred, gt), 0.99);
  EXPECT_EQ(accuracy(gt, gt), 1.0);
  std::vector<double> inv(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) inv[i] = 1.0 - gt[i];
  EXPECT_EQ(accuracy(inv, gt), 0.0);
  EXPECT_EQ(accuracy(std::vector<double>{0.5}, std::vector<double>{1.0}), 1.0);  // threshold inclusive
}

TEST(Accuracy, MatchesNaiveOnRandomScores) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution bit(0.4);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> p(200), g(200);
    for (int k = 0; k < 200; ++k) {
      p[k] = u(rng);
      g[k] = bit(rng);
    }
    EXPECT_NEAR(accuracy(p, g), testing::naive_accuracy(p, g), 1e-9);
  }
}

TEST(SegLoss, PerfectPredictionNearZero) {
  const std::vector<double> gt{1, 0, 0, 1, 1, 0};
  EXPECT_LE(seg_loss(gt, gt), 2e-6);
  EXPECT_GE(seg_loss(gt, gt), 0.0);
}

TEST(SegLoss, HalfPredictionWorkedExample) {
  std::vector<double> pred(1000, 0.5), gt(1000, 0.0);
  for (int i = 0; i < 500; ++i) gt[i] = 1.0;
  EXPECT_NEAR(bce_term(pred, gt), std::log(2.0), 1e-12);
  EXPECT_NEAR(dice_term(pred, gt), 0.5, 1e-12);
  EXPECT_NEAR(seg_loss(pred, gt), 1.1931, 1e-4);
}

TEST(SegLoss, ComplementPredictionClipped) {
  const std::vector<double> gt{1, 0, 1, 0};
  const std::vector<double> pred{0, 1, 0, 1};
  EXPECT_DOUBLE_EQ(dice_term(pred, gt), 1.0);
  EXPECT_NEAR(bce_term(pred, gt), -std::log(kSegEpsilon), 1e-9);
}

TEST(SegLoss, EmptyDiceIsZero) {
  const std::vector<double> z(5, 0.0);
  EXPECT_EQ(dice_term(z, z), 0.0);
}

TEST(SegLoss, MatchesNaiveOnRandomMaps) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution bit(0.5);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> p(300), g(300);
    for (int k = 0; k < 300; ++k) {
      p[k] = u(rng);
      g[k] = bit(rng);
    }
    if (i % 10 == 0) p[0] = 0.0;  // exercise clipping
    EXPECT_NEAR(seg_loss(p, g), testing::naive_seg_loss(p, g), 1e-9);
  }
}

TEST(Mae, ExamplesAndOracle) {
  EXPECT_EQ(mae(std::vector<double>{1, 2}, std::vector<double>{1, 2}), 0.0);
  EXPECT_DOUBLE_EQ(mae(std::vector<double>{0.3}, std::vector<double>{0.1}), 0.2);
  EXPECT_THROW(mae(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> p(50), g(50);
    for (int k = 0; k < 50; ++k) {
      p[k] = n(rng);
      g[k] = n(rng);
    }
    EXPECT_NEAR(mae(p, g), testing::naive_mae(p, g), 1e-9);
  }
}

TEST(TotalLoss, WeightedSum) {
  TaskLosses l;
  l.fill(0.1);
  EXPECT_NEAR(total_loss(l, {1, 1, 1, 1, 1, 1, 1}), 0.7, 1e-15);
  EXPECT_NEAR(total_loss(l, {2, 0, 0, 0, 0, 0, 1}), 0.3, 1e-15);
}

SemanticImage image_of(std::initializer_list<std::uint8_t> v, int cols) {
  SemanticImage img(static_cast<int>(v.size()) / cols, cols);
  std::copy(v.begin(), v.end(), img.data().begin());
  return img;
}

void add_neutral(MetricAccumulator& acc) {
  acc.add_flags(0, 0, 0, 0);
  acc.add_controls({}, {});
  const std::vector<double> wp(6, 0.0);
  acc.add_waypoints(wp, wp);
}

TEST(Accumulator, DatasetLevelIouOverPresentClasses) {
  MetricAccumulator acc;
  // Frame 1: class 7 exact; frame 2: one class-7 pixel predicted as class 8.
  acc.add_segmentation(image_of({7, 7, 7, 7}, 2), image_of({7, 7, 7, 7}, 2));
  acc.add_segmentation(image_of({7, 8, 7, 7}, 2), image_of({7, 7, 7, 7}, 2));
  add_neutral(acc);
  add_neutral(acc);
  const MetricReport r = acc.report({1, 1, 1, 1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(r.iou_per_class[7], 7.0 / 8.0);
  EXPECT_DOUBLE_EQ(r.iou_per_class[8], 0.0);
  EXPECT_DOUBLE_EQ(r.iou_per_class[0], 1.0);  // absent everywhere
  EXPECT_DOUBLE_EQ(r.mean_iou, (7.0 / 8.0 + 0.0) / 2.0);
  EXPECT_EQ(r.frames, 2u);
}

TEST(Accumulator, MergeEqualsSequential) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> cls(0, 22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MetricAccumulator all, a, b;
  for (int f = 0; f < 6; ++f) {
    SemanticImage p(8, 8), g(8, 8);
    for (auto& v : p.data()) v = static_cast<std::uint8_t>(cls(rng));
    for (auto& v : g.data()) v = static_cast<std::uint8_t>(cls(rng));
    const VehicularControls pc{u(rng) * 2 - 1, u(rng) * 0.75, u(rng)}, gc{u(rng) * 2 - 1, u(rng) * 0.75, u(rng)};
    std::vector<double> pw(6), gw(6);
    for (auto& v : pw) v = u(rng);
    for (auto& v : gw) v = u(rng);
    const double ptl = u(rng), gtl = u(rng) > 0.5, pss = u(rng), gss = u(rng) > 0.5;
    for (MetricAccumulator* m : {&all, f < 3 ? &a : &b}) {
      m->add_segmentation(p, g);
      m->add_flags(ptl, gtl, pss, gss);
      m->add_controls(pc, gc);
      m->add_waypoints(pw, gw);
    }
  }
  a.merge(b);
  const MetricReport x = all.report({1, 2, 3, 4, 5, 6, 7});
  const MetricReport y = a.report({1, 2, 3, 4, 5, 6, 7});
  EXPECT_EQ(x.iou_per_class, y.iou_per_class);
  EXPECT_NEAR(x.total, y.total, 1e-12);
  EXPECT_EQ(x.accuracy_tl, y.accuracy_tl);
  EXPECT_EQ(x.frames, y.frames);
}

TEST(Accumulator, EmptyReportRejected) {
  MetricAccumulator acc;
  EXPECT_THROW(acc.report({1, 1, 1, 1, 1, 1, 1}), std::invalid_argument);
}

}  // namespace
}  // namespace sdcdrive
