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

#include <array>
#include <optional>
#include <string_view>

#include "lvp/raster.hpp"

namespace lvp {

// Laplacian prompt variants:
//   kLvp4         4-neighbour stencil [[0,1,0],[1,-4,1],[0,1,0]] (default)
//   kLvp8         8-neighbour stencil [[1,1,1],[1,-8,1],[1,1,1]]
//   kLvp4Reversed element-wise negation of kLvp4
//   kLvp4Gray     kLvp4 applied to the BT.601 luma of an RGB input
enum class LaplacianKind { kLvp4, kLvp8, kLvp4Reversed, kLvp4Gray };

// How the signed response is brought back to 8 bits.
//   kSaturate      round(clamp(v, 0, 255))
//   kNormalizedAbs |v| scaled so the largest magnitude maps to 255
enum class ClampMode { kSaturate, kNormalizedAbs };

struct LaplacianVariant {
  LaplacianKind kind = LaplacianKind::kLvp4;
  ClampMode clamp_mode = ClampMode::kSaturate;
};

using Kernel3x3 = std::array<int, 9>;

// Row-major 3x3 weights. Every kernel is symmetric, so correlation and
// convolution coincide.
Kernel3x3 laplacian_kernel(LaplacianKind kind);

// CLI spelling: lvp, lvp2, lvpr, lvpg.
std::string_view variant_name(LaplacianKind kind);
std::optional<LaplacianKind> parse_variant(std::string_view name);
// saturate, normabs.
std::string_view clamp_mode_name(ClampMode mode);
std::optional<ClampMode> parse_clamp_mode(std::string_view name);

// Per-channel 3x3 Laplacian with replicate padding. kLvp4Gray converts a
// 3-channel input to luma first and returns a single-channel field.
// Throws kImageTooSmall, kNonFiniteInput, kWrongChannelCount.
SignedField convolve_laplacian(const RasterImage& image, LaplacianKind kind);

Image8 to_prompt(const SignedField& field, ClampMode mode);

// BT.601 luma, 0.299 R + 0.587 G + 0.114 B. 8-bit inputs are rounded
// half-up. Throws kWrongChannelCount unless the input has 3 channels.
RasterImage to_grayscale(const RasterImage& image);

// convolve_laplacian followed by to_prompt.
Image8 make_prompt(const RasterImage& image, const LaplacianVariant& variant);

}  // namespace lvp
