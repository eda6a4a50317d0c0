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

// Straightforward reference implementations used to cross-check the library.
// They are written independently of the production code paths and favour
// clarity over speed.

#include <cstdint>
#include <span>
#include <vector>

#include "sdcdrive/common/grid.hpp"
#include "sdcdrive/control/nn.hpp"
#include "sdcdrive/sdc/sdc.hpp"

namespace sdcdrive::testing {

// Projects every pixel through its own pinhole ray, visiting pixels from the
// last to the first so the earliest pixel in raster order overwrites later
// ones. Returns class per cell or -1.
Grid<int> brute_force_sdc(const SemanticImage& sem, const DepthMap& depth, double fx, double cx);

// One-hot tensor built from a label grid, for comparing with SdcTensor.
SdcTensor labels_to_sdc(const Grid<int>& labels);

// GRU step with explicit scalar loops over the raw weight arrays,
// accumulated in long double.
std::vector<double> scalar_gru_step(const WeightBundle& w, const std::vector<double>& x,
                                    const std::vector<double>& h);

// Naive metric references.
double naive_iou(const std::vector<int>& pred, const std::vector<int>& gt);
double naive_accuracy(const std::vector<double>& pred, const std::vector<double>& gt);
double naive_seg_loss(const std::vector<double>& pred, const std::vector<double>& gt);
double naive_mae(const std::vector<double>& pred, const std::vector<double>& gt);

}  // namespace sdcdrive::testing
