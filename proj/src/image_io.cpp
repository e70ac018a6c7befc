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

#include "lvp/image_io.hpp"

#include <png.h>

#include <array>
#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include <fmt/format.h>

namespace lvp::io {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error(ErrorCode::kIoError, fmt::format("cannot open {}", path.string()));
  return f;
}

struct PngMessage {
  std::array<char, 256> text{};
};

[[noreturn]] void on_png_error(png_structp png, png_const_charp msg) {
  auto* slot = static_cast<PngMessage*>(png_get_error_ptr(png));
  if (slot) std::snprintf(slot->text.data(), slot->text.size(), "%s", msg);
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

class PngRead {
 public:
  explicit PngRead(const std::filesystem::path& path) : file_(open_file(path, "rb")) {
    png_ = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message_, on_png_error, on_png_warning);
    if (png_) info_ = png_create_info_struct(png_);
    if (!png_ || !info_) throw Error(ErrorCode::kIoError, "libpng initialisation failed");
    png_init_io(png_, file_.get());
  }
  ~PngRead() { png_destroy_read_struct(&png_, &info_, nullptr); }
  PngRead(const PngRead&) = delete;
  PngRead& operator=(const PngRead&) = delete;

  png_structp png() const { return png_; }
  png_infop info() const { return info_; }
  const char* message() const { return message_.text.data(); }

 private:
  FilePtr file_;
  PngMessage message_;
  png_structp png_ = nullptr;
  png_infop info_ = nullptr;
};

class PngWrite {
 public:
  explicit PngWrite(const std::filesystem::path& path) : file_(open_file(path, "wb")) {
    png_ = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message_, on_png_error, on_png_warning);
    if (png_) info_ = png_create_info_struct(png_);
    if (!png_ || !info_) throw Error(ErrorCode::kIoError, "libpng initialisation failed");
    png_init_io(png_, file_.get());
  }
  ~PngWrite() { png_destroy_write_struct(&png_, &info_); }
  PngWrite(const PngWrite&) = delete;
  PngWrite& operator=(const PngWrite&) = delete;

  png_structp png() const { return png_; }
  png_infop info() const { return info_; }
  const char* message() const { return message_.text.data(); }

 private:
  FilePtr file_;
  PngMessage message_;
  png_structp png_ = nullptr;
  png_infop info_ = nullptr;
};

// Decoded rows plus the shape libpng reported after transforms. The setjmp
// frames below touch only this struct and plain scalars.
struct Decoded {
  int width = 0;
  int height = 0;
  int channels = 0;
  int bit_depth = 0;
  int color_type = 0;
  std::vector<std::uint8_t> bytes;
  std::vector<png_bytep> rows;
};

enum class Want { kEightBit, kSixteenGray, kHeaderOnly };

bool decode(const PngRead& r, Want want, Decoded& out) {
  if (setjmp(png_jmpbuf(r.png()))) return false;
  png_read_info(r.png(), r.info());
  out.width = static_cast<int>(png_get_image_width(r.png(), r.info()));
  out.height = static_cast<int>(png_get_image_height(r.png(), r.info()));
  out.bit_depth = png_get_bit_depth(r.png(), r.info());
  out.color_type = png_get_color_type(r.png(), r.info());
  out.channels = png_get_channels(r.png(), r.info());
  if (want == Want::kHeaderOnly) return true;
  if (want == Want::kEightBit) {
    if (out.bit_depth == 16) return true;
    if (out.color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png());
    if (out.color_type == PNG_COLOR_TYPE_GRAY && out.bit_depth < 8) png_set_expand_gray_1_2_4_to_8(r.png());
    if (out.color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(r.png());
  } else if (out.bit_depth != 16 || out.color_type != PNG_COLOR_TYPE_GRAY) {
    return true;
  }
  png_read_update_info(r.png(), r.info());
  out.channels = png_get_channels(r.png(), r.info());
  const std::size_t row_bytes = png_get_rowbytes(r.png(), r.info());
  out.bytes.resize(row_bytes * static_cast<std::size_t>(out.height));
  out.rows.resize(static_cast<std::size_t>(out.height));
  for (int y = 0; y < out.height; ++y) out.rows[y] = out.bytes.data() + row_bytes * y;
  png_read_image(r.png(), out.rows.data());
  png_read_end(r.png(), nullptr);
  return true;
}

bool encode(const PngWrite& w, int width, int height, int bit_depth, int color_type,
            std::vector<png_bytep>& rows) {
  if (setjmp(png_jmpbuf(w.png()))) return false;
  png_set_IHDR(w.png(), w.info(), static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bit_depth,
               color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png(), w.info());
  png_write_image(w.png(), rows.data());
  png_write_end(w.png(), nullptr);
  return true;
}

}  // namespace

PngHeader read_png_header(const std::filesystem::path& path) {
  PngRead reader(path);
  Decoded d;
  if (!decode(reader, Want::kHeaderOnly, d)) {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: {}", path.string(), reader.message()));
  }
  return {d.width, d.height, d.channels, d.bit_depth};
}

Image8 read_png8(const std::filesystem::path& path) {
  PngRead reader(path);
  Decoded d;
  if (!decode(reader, Want::kEightBit, d)) {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: {}", path.string(), reader.message()));
  }
  if (d.bit_depth == 16) {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: expected an 8-bit PNG", path.string()));
  }
  if (d.channels != 1 && d.channels != 3) {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: unsupported channel count {}", path.string(), d.channels));
  }
  std::vector<std::uint8_t> samples(static_cast<std::size_t>(d.width) * d.height * d.channels);
  const std::size_t row = static_cast<std::size_t>(d.width) * d.channels;
  for (int y = 0; y < d.height; ++y) std::memcpy(samples.data() + row * y, d.rows[y], row);
  return Image8(d.width, d.height, d.channels, std::move(samples));
}

Image16 read_png16(const std::filesystem::path& path) {
  PngRead reader(path);
  Decoded d;
  if (!decode(reader, Want::kSixteenGray, d)) {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: {}", path.string(), reader.message()));
  }
  if (d.bit_depth != 16 || d.color_type != PNG_COLOR_TYPE_GRAY) {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: expected a 16-bit grayscale PNG", path.string()));
  }
  std::vector<std::uint16_t> samples(static_cast<std::size_t>(d.width) * d.height);
  for (int y = 0; y < d.height; ++y) {
    const png_bytep row = d.rows[y];
    for (int x = 0; x < d.width; ++x) {
      samples[static_cast<std::size_t>(y) * d.width + x] =
          static_cast<std::uint16_t>((row[2 * x] << 8) | row[2 * x + 1]);
    }
  }
  return Image16(d.width, d.height, 1, std::move(samples));
}

void write_png8(const std::filesystem::path& path, const Image8& image) {
  if (image.channels() != 1 && image.channels() != 3) {
    throw Error(ErrorCode::kWrongChannelCount, "PNG output supports 1 or 3 channels");
  }
  PngWrite writer(path);
  const std::size_t row = static_cast<std::size_t>(image.width()) * image.channels();
  std::vector<std::uint8_t> bytes(image.samples().begin(), image.samples().end());
  std::vector<png_bytep> rows(static_cast<std::size_t>(image.height()));
  for (int y = 0; y < image.height(); ++y) rows[y] = bytes.data() + row * y;
  const int color = image.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
  if (!encode(writer, image.width(), image.height(), 8, color, rows)) {
    throw Error(ErrorCode::kIoError, fmt::format("{}: {}", path.string(), writer.message()));
  }
}

void write_png16(const std::filesystem::path& path, const Image16& image) {
  if (image.channels() != 1) throw Error(ErrorCode::kWrongChannelCount, "16-bit PNG output is grayscale only");
  PngWrite writer(path);
  const std::size_t row = static_cast<std::size_t>(image.width()) * 2;
  std::vector<std::uint8_t> bytes(row * image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const std::uint16_t v = image(x, y);
      bytes[row * y + 2 * x] = static_cast<std::uint8_t>(v >> 8);
      bytes[row * y + 2 * x + 1] = static_cast<std::uint8_t>(v & 0xFF);
    }
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(image.height()));
  for (int y = 0; y < image.height(); ++y) rows[y] = bytes.data() + row * y;
  if (!encode(writer, image.width(), image.height(), 16, PNG_COLOR_TYPE_GRAY, rows)) {
    throw Error(ErrorCode::kIoError, fmt::format("{}: {}", path.string(), writer.message()));
  }
}

ImageF read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open {}", path.string()));

  std::string magic;
  int width = 0;
  int height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  if (!in || (magic != "Pf" && magic != "PF")) {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: not a PFM file", path.string()));
  }
  if (width <= 0 || height <= 0 || scale == 0.0 || !std::isfinite(scale)) {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: bad PFM header", path.string()));
  }
  const int c = in.get();  // single whitespace byte ends the header
  if (c != '\n' && c != ' ' && c != '\r' && c != '\t') {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: bad PFM header terminator", path.string()));
  }

  const int channels = magic == "PF" ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  std::vector<std::uint8_t> raw(count * 4);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: truncated PFM payload", path.string()));
  }

  const bool little = scale < 0.0;
  const std::size_t row = static_cast<std::size_t>(width) * channels;
  std::vector<float> samples(count);
  for (int file_row = 0; file_row < height; ++file_row) {
    const int y = height - 1 - file_row;
    for (std::size_t i = 0; i < row; ++i) {
      const std::uint8_t* b = raw.data() + (file_row * row + i) * 4;
      const std::uint32_t bits =
          little ? (std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 |
                    std::uint32_t{b[3]} << 24)
                 : (std::uint32_t{b[3]} | std::uint32_t{b[2]} << 8 | std::uint32_t{b[1]} << 16 |
                    std::uint32_t{b[0]} << 24);
      samples[static_cast<std::size_t>(y) * row + i] = std::bit_cast<float>(bits);
    }
  }
  return ImageF(width, height, channels, std::move(samples));
}

void write_pfm(const std::filesystem::path& path, const ImageF& image) {
  if (image.channels() != 1 && image.channels() != 3) {
    throw Error(ErrorCode::kWrongChannelCount, "PFM output supports 1 or 3 channels");
  }
  std::string header =
      fmt::format("{}\n{} {}\n-1\n", image.channels() == 1 ? "Pf" : "PF", image.width(), image.height());
  const std::size_t row = static_cast<std::size_t>(image.width()) * image.channels();
  std::vector<std::uint8_t> raw(row * image.height() * 4);
  const auto samples = image.samples();
  for (int file_row = 0; file_row < image.height(); ++file_row) {
    const int y = image.height() - 1 - file_row;
    for (std::size_t i = 0; i < row; ++i) {
      const auto bits = std::bit_cast<std::uint32_t>(samples[static_cast<std::size_t>(y) * row + i]);
      std::uint8_t* b = raw.data() + (file_row * row + i) * 4;
      b[0] = static_cast<std::uint8_t>(bits);
      b[1] = static_cast<std::uint8_t>(bits >> 8);
      b[2] = static_cast<std::uint8_t>(bits >> 16);
      b[3] = static_cast<std::uint8_t>(bits >> 24);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot write {}", path.string()));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("short write to {}", path.string()));
}

}  // namespace lvp::io
