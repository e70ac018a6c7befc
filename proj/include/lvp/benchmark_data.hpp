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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvp/raster.hpp"

namespace lvp {

// Ground-truth relative order of a point pair. Ties are not representable.
enum class OrdinalLabel { kFirstPointNear, kSecondPointNear };

std::string_view label_name(OrdinalLabel label);  // "p1_near" / "p2_near"
std::optional<OrdinalLabel> parse_label(std::string_view name);

// Pixel coordinate: x is the column, y the row, origin top-left.
struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class Subset { kOverall, kSame, kReverse };

std::string_view subset_name(Subset subset);  // "overall" / "same" / "reverse"
std::optional<Subset> parse_subset(std::string_view name);

struct Sample {
  std::string id;
  std::string image;  // relative to the manifest root
  std::string mask;   // empty only for single-layer samples without a mask
  Point p1;
  Point p2;
  OrdinalLabel layer1 = OrdinalLabel::kFirstPointNear;
  OrdinalLabel layer2 = OrdinalLabel::kFirstPointNear;

  bool is_reverse() const noexcept { return layer1 != layer2; }
  bool in(Subset subset) const noexcept {
    return subset == Subset::kOverall || (subset == Subset::kReverse) == is_reverse();
  }
};

// Two-layer benchmark. Samples keep file order; ids are unique.
struct BenchmarkManifest {
  std::string schema_version = "1";
  std::vector<Sample> samples;
  // True when loaded from the single-layer schema; layer2 then mirrors layer1.
  bool single_layer = false;

  std::vector<const Sample*> subset(Subset which) const;
  std::size_t count(Subset which) const;
};

struct ManifestOptions {
  // Directory that relative image/mask paths resolve against. Defaults to
  // the manifest's own directory.
  std::optional<std::filesystem::path> root;
  // Check points against image bounds and masks on disk.
  bool verify_rasters = true;
  bool single_layer = false;
};

// Throws kSchemaError, kBoundsError, kMaskMismatch, kDuplicateId,
// kNonBinaryMask or kIoError.
BenchmarkManifest load_manifest(const std::filesystem::path& path, const ManifestOptions& options = {});
BenchmarkManifest parse_manifest(const nlohmann::json& doc, const std::filesystem::path& root,
                                 const ManifestOptions& options = {});

// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize_manifest(const BenchmarkManifest& manifest);
nlohmann::json manifest_to_json(const BenchmarkManifest& manifest);

// Throws kNonBinaryMask unless every sample is 0 or 255, and
// kWrongChannelCount for multi-channel masks.
void require_binary_mask(const Image8& mask);

double ambiguity_ratio(const Image8& mask);

// Area-weighted box resample of each mask to grid x grid, summed over
// masks, then scaled so the largest cell is 1. An all-zero sum stays zero.
Grid<double> spatial_heatmap(const std::vector<Image8>& masks, int grid);

using MaskLoader = std::function<Image8(const std::filesystem::path&)>;
Grid<double> spatial_heatmap(const BenchmarkManifest& manifest, const std::filesystem::path& root, int grid,
                             const MaskLoader& load_mask);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

// Equal-width bins over [0, 1]; 1.0 lands in the last bin.
std::vector<HistogramBin> histogram(const std::vector<double>& ratios, int bins);

}  // namespace lvp
