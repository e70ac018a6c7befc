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

#include "lvp/spectral_prompt.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace lvp {

Kernel3x3 laplacian_kernel(LaplacianKind kind) {
  switch (kind) {
    case LaplacianKind::kLvp8:
      return {1, 1, 1, 1, -8, 1, 1, 1, 1};
    case LaplacianKind::kLvp4Reversed:
      return {0, -1, 0, -1, 4, -1, 0, -1, 0};
    case LaplacianKind::kLvp4:
    case LaplacianKind::kLvp4Gray:
      break;
  }
  return {0, 1, 0, 1, -4, 1, 0, 1, 0};
}

std::string_view variant_name(LaplacianKind kind) {
  switch (kind) {
    case LaplacianKind::kLvp4: return "lvp";
    case LaplacianKind::kLvp8: return "lvp2";
    case LaplacianKind::kLvp4Reversed: return "lvpr";
    case LaplacianKind::kLvp4Gray: return "lvpg";
  }
  return "lvp";
}

std::optional<LaplacianKind> parse_variant(std::string_view name) {
  for (auto kind : {LaplacianKind::kLvp4, LaplacianKind::kLvp8, LaplacianKind::kLvp4Reversed,
                    LaplacianKind::kLvp4Gray}) {
    if (variant_name(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view clamp_mode_name(ClampMode mode) {
  return mode == ClampMode::kSaturate ? "saturate" : "normabs";
}

std::optional<ClampMode> parse_clamp_mode(std::string_view name) {
  if (name == "saturate") return ClampMode::kSaturate;
  if (name == "normabs") return ClampMode::kNormalizedAbs;
  return std::nullopt;
}

namespace {

void check_convolvable(const RasterImage& image) {
  if (image.width() < 3 || image.height() < 3) {
    throw Error(ErrorCode::kImageTooSmall,
                fmt::format("{}x{} input; the 3x3 stencil needs at least 3x3", image.width(), image.height()));
  }
  if (image.channels() != 1 && image.channels() != 3) {
    throw Error(ErrorCode::kWrongChannelCount, fmt::format("{} channels; expected 1 or 3", image.channels()));
  }
  if (image.kind() == SampleKind::kF32) {
    const auto samples = image.f32().samples();
    if (!std::all_of(samples.begin(), samples.end(), [](float v) { return std::isfinite(v); })) {
      throw Error(ErrorCode::kNonFiniteInput, "input contains NaN or Inf samples");
    }
  }
}

SignedField correlate(const ImageF& src, const Kernel3x3& k) {
  SignedField out(src.width(), src.height(), src.channels());
  const int w = src.width();
  const int h = src.height();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < src.channels(); ++c) {
        double acc = 0.0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int weight = k[(dy + 1) * 3 + (dx + 1)];
            if (weight != 0) acc += weight * static_cast<double>(src.clamped(x + dx, y + dy, c));
          }
        }
        out(x, y, c) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

std::uint8_t round_half_up_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

}  // namespace

SignedField convolve_laplacian(const RasterImage& image, LaplacianKind kind) {
  check_convolvable(image);
  if (kind == LaplacianKind::kLvp4Gray && image.channels() == 3) {
    return correlate(to_grayscale(image).to_float(), laplacian_kernel(kind));
  }
  return correlate(image.to_float(), laplacian_kernel(kind));
}

Image8 to_prompt(const SignedField& field, ClampMode mode) {
  const auto in = field.samples();
  if (!std::all_of(in.begin(), in.end(), [](float v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::kNonFiniteInput, "field contains NaN or Inf samples");
  }
  Image8 out(field.width(), field.height(), field.channels());
  auto dst = out.samples();
  if (mode == ClampMode::kSaturate) {
    std::transform(in.begin(), in.end(), dst.begin(), [](float v) { return round_half_up_u8(v); });
    return out;
  }
  double peak = 0.0;
  for (float v : in) peak = std::max(peak, std::abs(static_cast<double>(v)));
  if (peak == 0.0) return out;
  std::transform(in.begin(), in.end(), dst.begin(),
                 [peak](float v) { return round_half_up_u8(255.0 * std::abs(static_cast<double>(v)) / peak); });
  return out;
}

RasterImage to_grayscale(const RasterImage& image) {
  if (image.channels() != 3) {
    throw Error(ErrorCode::kWrongChannelCount, fmt::format("grayscale needs 3 channels, got {}", image.channels()));
  }
  const auto luma = [&](int x, int y) {
    return 0.299 * image.sample(x, y, 0) + 0.587 * image.sample(x, y, 1) + 0.114 * image.sample(x, y, 2);
  };
  if (image.kind() == SampleKind::kU8) {
    Image8 out(image.width(), image.height(), 1);
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) out(x, y) = round_half_up_u8(luma(x, y));
    }
    return out;
  }
  ImageF out(image.width(), image.height(), 1);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) out(x, y) = static_cast<float>(luma(x, y));
  }
  return out;
}

Image8 make_prompt(const RasterImage& image, const LaplacianVariant& variant) {
  return to_prompt(convolve_laplacian(image, variant.kind), variant.clamp_mode);
}

}  // namespace lvp
