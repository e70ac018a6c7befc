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
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "lvp/error.hpp"

namespace lvp {

// Row-major H x W x C sample grid. Channels are interleaved per pixel.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;

  Grid(int width, int height, int channels, T fill = T{})
      : width_(width), height_(height), channels_(channels) {
    check_dims();
    samples_.assign(count(), fill);
  }

  Grid(int width, int height, int channels, std::vector<T> samples)
      : width_(width), height_(height), channels_(channels), samples_(std::move(samples)) {
    check_dims();
    if (samples_.size() != count()) {
      throw Error(ErrorCode::kDimMismatch, "sample count does not match width x height x channels");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return samples_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  T& operator()(int x, int y, int c = 0) noexcept { return samples_[index(x, y, c)]; }
  const T& operator()(int x, int y, int c = 0) const noexcept { return samples_[index(x, y, c)]; }

  // Edge-clamped read; out-of-range coordinates snap to the nearest border pixel.
  const T& clamped(int x, int y, int c = 0) const noexcept {
    x = x < 0 ? 0 : (x >= width_ ? width_ - 1 : x);
    y = y < 0 ? 0 : (y >= height_ ? height_ - 1 : y);
    return samples_[index(x, y, c)];
  }

  std::span<T> samples() noexcept { return samples_; }
  std::span<const T> samples() const noexcept { return samples_; }

  bool same_shape(const Grid& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t count() const noexcept { return pixel_count() * static_cast<std::size_t>(channels_); }
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }
  void check_dims() const {
    if (width_ < 0 || height_ < 0 || channels_ <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "grid dimensions must be non-negative with >= 1 channel");
    }
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<T> samples_;
};

using Image8 = Grid<std::uint8_t>;
using Image16 = Grid<std::uint16_t>;
using ImageF = Grid<float>;

// Signed Laplacian response, one float per source sample.
using SignedField = ImageF;

enum class SampleKind { kU8, kF32 };

// An RGB or single-channel picture carried either as 8-bit or float samples.
class RasterImage {
 public:
  RasterImage(Image8 image) : data_(std::move(image)) {}  // NOLINT(implicit)
  RasterImage(ImageF image) : data_(std::move(image)) {}  // NOLINT(implicit)

  SampleKind kind() const noexcept {
    return std::holds_alternative<Image8>(data_) ? SampleKind::kU8 : SampleKind::kF32;
  }
  int width() const noexcept {
    return std::visit([](const auto& g) { return g.width(); }, data_);
  }
  int height() const noexcept {
    return std::visit([](const auto& g) { return g.height(); }, data_);
  }
  int channels() const noexcept {
    return std::visit([](const auto& g) { return g.channels(); }, data_);
  }

  float sample(int x, int y, int c) const noexcept {
    return std::visit([&](const auto& g) { return static_cast<float>(g(x, y, c)); }, data_);
  }

  const Image8& u8() const { return std::get<Image8>(data_); }
  const ImageF& f32() const { return std::get<ImageF>(data_); }

  // Promotes to float samples; the values are unchanged.
  ImageF to_float() const;

 private:
  std::variant<Image8, ImageF> data_;
};

}  // namespace lvp
