// Copyright 2026 The lvpbench Authors. All Rights Reserved.
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

#include <cstddef>

#include "lvp/depth_backend.hpp"
#include "lvp/raster.hpp"

namespace lvp {

struct FillOptions {
  // Stop once the largest per-pixel update and the largest mean-value
  // residual are both below tolerance x (dynamic range of unmasked depth).
  double tolerance = 1e-5;
  int max_iters = 10000;
};

struct FillResult {
  DepthPrediction depth;
  bool converged = false;
  int iterations = 0;
  double max_update = 0.0;
  double tolerance_abs = 0.0;
  std::size_t filled_pixels = 0;
};

// Replaces the depth inside the mask (non-zero pixels) by the solution of the
// discrete Laplace equation whose Dirichlet data is the surrounding depth.
// Masked pixels start from the average of row-wise and column-wise linear
// interpolation between the nearest unmasked pixels, then Gauss-Seidel sweeps
// run in raster order. Masked pixels on the image border average only their
// in-image neighbours. Values outside the mask are copied unchanged.
//
// Throws kNonBinaryMask, kDimMismatch, and kNoBoundary when the mask covers
// the whole image. Non-convergence is reported in the result, not thrown.
FillResult harmonic_fill(const DepthPrediction& depth, const Image8& mask, const FillOptions& options = {});

// |pred & gt| / |pred | gt|, 1.0 when both are empty.
// Throws kDimMismatch and kNonBinaryMask.
double mask_iou(const Image8& pred, const Image8& gt);

}  // namespace lvp
