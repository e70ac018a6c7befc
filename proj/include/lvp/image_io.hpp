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

#include <filesystem>

#include "lvp/raster.hpp"

namespace lvp::io {

// 8-bit PNG with one or three channels. Palette images are expanded and an
// alpha channel is dropped; 16-bit files are rejected with kFormatError.
Image8 read_png8(const std::filesystem::path& path);
void write_png8(const std::filesystem::path& path, const Image8& image);

// Single-channel 16-bit PNG, samples in native integer units.
Image16 read_png16(const std::filesystem::path& path);
void write_png16(const std::filesystem::path& path, const Image16& image);

struct PngHeader {
  int width = 0;
  int height = 0;
  int channels = 0;
  int bit_depth = 0;
};

// Reads only the IHDR chunk.
PngHeader read_png_header(const std::filesystem::path& path);

// Portable float map. "Pf" is one channel, "PF" three. Rows are stored
// bottom-up; a negative scale marks little-endian samples.
ImageF read_pfm(const std::filesystem::path& path);

// Writes little-endian with scale -1.
void write_pfm(const std::filesystem::path& path, const ImageF& image);

}  // namespace lvp::io
