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

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "lvp/benchmark_data.hpp"
#include "lvp/depth_backend.hpp"
#include "lvp/image_io.hpp"
#include "lvp/metrics.hpp"
#include "lvp/raster.hpp"
#include "lvp/report.hpp"

namespace lvp::testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            fmt::format("lvp_test_{}_{}", static_cast<long>(::getpid()), counter.fetch_add(1));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Sample make_sample(std::string id, Point p1, Point p2, OrdinalLabel l1, OrdinalLabel l2) {
  Sample s;
  s.id = std::move(id);
  s.image = "images/" + s.id + ".png";
  s.mask = "masks/" + s.id + ".png";
  s.p1 = p1;
  s.p2 = p2;
  s.layer1 = l1;
  s.layer2 = l2;
  return s;
}

inline OrdinalLabel flip(OrdinalLabel l) {
  return l == OrdinalLabel::kFirstPointNear ? OrdinalLabel::kSecondPointNear : OrdinalLabel::kFirstPointNear;
}

inline OrdinalLabel random_label(std::mt19937_64& rng) {
  return (rng() & 1U) ? OrdinalLabel::kSecondPointNear : OrdinalLabel::kFirstPointNear;
}

// In-memory manifest over a 4x4 frame with fixed points; no rasters touched.
inline BenchmarkManifest synthetic_manifest(std::size_t n, std::mt19937_64& rng, double reverse_fraction = 0.5) {
  BenchmarkManifest m;
  std::bernoulli_distribution reverse(reverse_fraction);
  for (std::size_t i = 0; i < n; ++i) {
    const OrdinalLabel l1 = random_label(rng);
    const OrdinalLabel l2 = reverse(rng) ? flip(l1) : l1;
    m.samples.push_back(make_sample(fmt::format("s{:06d}", i), {0, 0}, {3, 3}, l1, l2));
  }
  return m;
}

// Writes image and mask PNGs plus the manifest JSON under dir; all masks are
// fully set so every in-bounds point is valid.
inline std::filesystem::path write_dataset(const std::filesystem::path& dir, const BenchmarkManifest& m, int w = 4,
                                           int h = 4) {
  std::filesystem::create_directories(dir / "images");
  std::filesystem::create_directories(dir / "masks");
  const Image8 image(w, h, 3, 128);
  const Image8 mask(w, h, 1, 255);
  for (const auto& s : m.samples) {
    io::write_png8(dir / s.image, image);
    if (!s.mask.empty()) io::write_png8(dir / s.mask, mask);
  }
  const auto path = dir / "manifest.json";
  write_text(path, serialize_manifest(m));
  return path;
}

// Writes a PFM store where each sample's field realizes the requested ordering
// at (p1, p2) under larger-is-closer polarity.
inline PredictionStore write_store(const std::filesystem::path& dir, const BenchmarkManifest& m,
                                   const std::vector<Ordering>& orderings, int w = 4, int h = 4) {
  PredictionStore store;
  store.root = dir;
  std::filesystem::create_directories(dir);
  write_store_metadata(store);
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    const Sample& s = m.samples[i];
    ImageF field(w, h, 1, 0.5F);
    field(s.p1.x, s.p1.y) = orderings[i] == Ordering::kP1Near ? 0.9F : (orderings[i] == Ordering::kTie ? 0.5F : 0.1F);
    field(s.p2.x, s.p2.y) = 0.5F;
    write_depth(store, s.id, field);
  }
  return store;
}

inline OrderingTable table_of(const BenchmarkManifest& m, const std::vector<Ordering>& orderings) {
  OrderingTable t;
  for (std::size_t i = 0; i < m.samples.size(); ++i) t.set(m.samples[i].id, orderings[i]);
  return t;
}

}  // namespace lvp::testing
