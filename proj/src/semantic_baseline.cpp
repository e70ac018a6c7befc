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

#include "lvp/semantic_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "lvp/benchmark_data.hpp"

namespace lvp {
namespace {

struct Neighbours {
  std::size_t index;
  std::size_t count;
  std::size_t at[4];
};

double mean_of(const std::vector<double>& u, const Neighbours& n) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n.count; ++k) sum += u[n.at[k]];
  return sum / static_cast<double>(n.count);
}

// Average of row-wise and column-wise linear interpolation across each
// masked run. Runs touching the border take the single available side.
void line_interpolation_guess(std::vector<double>& u, const std::vector<char>& masked, int w, int h,
                              double fallback) {
  std::vector<double> sum(u.size(), 0.0);
  std::vector<int> hits(u.size(), 0);
  const auto pass = [&](int lines, int len, auto index_of) {
    for (int line = 0; line < lines; ++line) {
      int t = 0;
      while (t < len) {
        if (!masked[index_of(line, t)]) {
          ++t;
          continue;
        }
        const int start = t;
        while (t < len && masked[index_of(line, t)]) ++t;
        const bool has_lo = start > 0;
        const bool has_hi = t < len;
        if (!has_lo && !has_hi) continue;
        const double lo = has_lo ? u[index_of(line, start - 1)] : u[index_of(line, t)];
        const double hi = has_hi ? u[index_of(line, t)] : lo;
        const double span = static_cast<double>(t - start + 1);
        for (int k = start; k < t; ++k) {
          const double s = has_lo && has_hi ? static_cast<double>(k - start + 1) / span : 0.0;
          const std::size_t i = index_of(line, k);
          sum[i] += lo + (hi - lo) * s;
          ++hits[i];
        }
      }
    }
  };
  pass(h, w, [w](int y, int x) { return static_cast<std::size_t>(y) * w + x; });
  pass(w, h, [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; });
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (masked[i]) u[i] = hits[i] ? sum[i] / hits[i] : fallback;
  }
}

}  // namespace

FillResult harmonic_fill(const DepthPrediction& depth, const Image8& mask, const FillOptions& options) {
  require_binary_mask(mask);
  const ImageF& field = depth.field;
  if (field.channels() != 1 || mask.width() != field.width() || mask.height() != field.height()) {
    throw Error(ErrorCode::kDimMismatch, fmt::format("mask {}x{} does not match depth {}x{}x{}", mask.width(),
                                                     mask.height(), field.width(), field.height(), field.channels()));
  }
  const int w = field.width();
  const int h = field.height();
  const std::size_t total = field.pixel_count();

  std::vector<char> masked(total);
  std::vector<double> u(total);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double boundary_sum = 0.0;
  std::size_t unmasked = 0;
  for (std::size_t i = 0; i < total; ++i) {
    masked[i] = mask.samples()[i] != 0;
    u[i] = field.samples()[i];
    if (!masked[i]) {
      lo = std::min(lo, u[i]);
      hi = std::max(hi, u[i]);
      boundary_sum += u[i];
      ++unmasked;
    }
  }

  FillResult result;
  result.depth = depth;
  result.filled_pixels = total - unmasked;
  if (result.filled_pixels == 0) {
    result.converged = true;
    return result;
  }
  if (unmasked == 0) throw Error(ErrorCode::kNoBoundary, "mask covers the entire image; no boundary depth to interpolate");

  const double range = hi - lo;
  result.tolerance_abs = range > 0.0 ? options.tolerance * range : options.tolerance;

  std::vector<Neighbours> cells;
  cells.reserve(result.filled_pixels);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (!masked[i]) continue;
      Neighbours n{i, 0, {}};
      if (x > 0) n.at[n.count++] = i - 1;
      if (x + 1 < w) n.at[n.count++] = i + 1;
      if (y > 0) n.at[n.count++] = i - static_cast<std::size_t>(w);
      if (y + 1 < h) n.at[n.count++] = i + static_cast<std::size_t>(w);
      cells.push_back(n);
    }
  }

  line_interpolation_guess(u, masked, w, h, boundary_sum / static_cast<double>(unmasked));

  for (int iter = 1; iter <= options.max_iters; ++iter) {
    double max_update = 0.0;
    for (const auto& n : cells) {
      const double next = mean_of(u, n);
      max_update = std::max(max_update, std::abs(next - u[n.index]));
      u[n.index] = next;
    }
    result.iterations = iter;
    result.max_update = max_update;
    if (max_update < result.tolerance_abs) {
      double residual = 0.0;
      for (const auto& n : cells) residual = std::max(residual, std::abs(mean_of(u, n) - u[n.index]));
      if (residual <= result.tolerance_abs) {
        result.converged = true;
        break;
      }
    }
  }

  auto out = result.depth.field.samples();
  for (const auto& n : cells) out[n.index] = static_cast<float>(u[n.index]);
  return result;
}

double mask_iou(const Image8& pred, const Image8& gt) {
  require_binary_mask(pred);
  require_binary_mask(gt);
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    throw Error(ErrorCode::kDimMismatch, fmt::format("masks are {}x{} and {}x{}", pred.width(), pred.height(),
                                                     gt.width(), gt.height()));
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  const auto a = pred.samples();
  const auto b = gt.samples();
  for (std::size_t i = 0; i < a.size(); ++i) {
    inter += (a[i] && b[i]) ? 1 : 0;
    uni += (a[i] || b[i]) ? 1 : 0;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace lvp
