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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdcdrive::testing {

Grid<int> brute_force_sdc(const SemanticImage& sem, const DepthMap& depth, double fx, double cx) {
  Grid<int> out(256, 256, -1);
  for (int v = sem.rows() - 1; v >= 0; --v) {
    for (int u = sem.cols() - 1; u >= 0; --u) {
      const int cls = sem(v, u);
      if (cls == 13) continue;  // sky
      const double d = depth(v, u);
      const double lateral = d * ((u - cx) / fx);
      // Grid edges map to indices 0 and 255 exactly; round half up.
      const double col = std::floor((lateral + 32.0) / 64.0 * 255.0 + 0.5);
      const double row = std::floor((1.0 - d / 64.0) * 255.0 + 0.5);
      if (d > 64.0 || col < 0.0 || col > 255.0 || row < 0.0 || row > 255.0) continue;
      out(static_cast<int>(row), static_cast<int>(col)) = cls;
    }
  }
  return out;
}

SdcTensor labels_to_sdc(const Grid<int>& labels) {
  SdcTensor t;
  for (int r = 0; r < labels.rows(); ++r) {
    for (int c = 0; c < labels.cols(); ++c) {
      if (labels(r, c) >= 0) t.set_label(r, c, labels(r, c));
    }
  }
  return t;
}

namespace {

long double dot_row(const NamedTensor& w, std::size_t row, const std::vector<double>& x) {
  long double acc = 0.0L;
  const std::size_t cols = w.shape[1];
  for (std::size_t k = 0; k < cols; ++k) acc += static_cast<long double>(w.values[row * cols + k]) * x[k];
  return acc;
}

long double logistic(long double v) { return 1.0L / (1.0L + std::exp(-v)); }

}  // namespace

std::vector<double> scalar_gru_step(const WeightBundle& w, const std::vector<double>& x,
                                    const std::vector<double>& h) {
  const NamedTensor& wih = w.at("gru.weight_ih");
  const NamedTensor& whh = w.at("gru.weight_hh");
  const NamedTensor& bih = w.at("gru.bias_ih");
  const NamedTensor& bhh = w.at("gru.bias_hh");
  const std::size_t n = h.size();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const long double r = logistic(dot_row(wih, j, x) + bih.values[j] + dot_row(whh, j, h) + bhh.values[j]);
    const long double z =
        logistic(dot_row(wih, n + j, x) + bih.values[n + j] + dot_row(whh, n + j, h) + bhh.values[n + j]);
    const long double cand = std::tanh(dot_row(wih, 2 * n + j, x) + bih.values[2 * n + j] +
                                       r * (dot_row(whh, 2 * n + j, h) + bhh.values[2 * n + j]));
    out[j] = static_cast<double>((1.0L - z) * cand + z * h[j]);
  }
  return out;
}

double naive_iou(const std::vector<int>& pred, const std::vector<int>& gt) {
  int inter = 0, uni = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] && gt[i]) ++inter;
    if (pred[i] || gt[i]) ++uni;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
}

double naive_accuracy(const std::vector<double>& pred, const std::vector<double>& gt) {
  int tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] >= 0.5;
    const bool g = gt[i] >= 0.5;
    if (p && g) ++tp;
    if (!p && !g) ++tn;
    if (p && !g) ++fp;
    if (!p && g) ++fn;
  }
  return static_cast<double>(tp + tn) / (tp + tn + fp + fn);
}

double naive_seg_loss(const std::vector<double>& pred, const std::vector<double>& gt) {
  double bce = 0.0, inter = 0.0, sp = 0.0, sg = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = std::min(std::max(pred[i], 1e-7), 1.0 - 1e-7);
    bce += gt[i] * std::log(p) + (1.0 - gt[i]) * std::log(1.0 - p);
    inter += pred[i] * gt[i];
    sp += pred[i];
    sg += gt[i];
  }
  bce = -bce / static_cast<double>(pred.size());
  const double dice = (sp + sg) == 0.0 ? 0.0 : 1.0 - 2.0 * inter / (sp + sg);
  return bce + dice;
}

double naive_mae(const std::vector<double>& pred, const std::vector<double>& gt) {
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) s += std::fabs(pred[i] - gt[i]);
  return s / static_cast<double>(pred.size());
}

}  // namespace sdcdrive::testing
