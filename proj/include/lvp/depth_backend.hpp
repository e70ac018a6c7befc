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
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lvp/benchmark_data.hpp"
#include "lvp/raster.hpp"

namespace lvp {

enum class Polarity {
  kLargerIsCloser,   // disparity / inverse depth
  kLargerIsFarther,  // metric depth
};

std::string_view polarity_name(Polarity p);  // "larger_is_closer" / "larger_is_farther"
std::optional<Polarity> parse_polarity(std::string_view name);

struct DepthPrediction {
  ImageF field;  // single channel, finite
  Polarity polarity = Polarity::kLargerIsCloser;
  std::string source_tag;
};

// A directory of per-sample depth rasters described by store.json:
//   { "polarity": "larger_is_closer" | "larger_is_farther",
//     "naming": "<sample_id>.pfm" }
// Extra keys (model, input, resize, ...) are kept verbatim in `metadata`.
struct PredictionStore {
  std::filesystem::path root;
  std::string naming = "<sample_id>.pfm";
  Polarity polarity = Polarity::kLargerIsCloser;
  nlohmann::json metadata = nlohmann::json::object();

  std::filesystem::path path_for(std::string_view sample_id) const;
  bool has(std::string_view sample_id) const;
};

inline constexpr std::string_view kStoreMetadataFile = "store.json";

PredictionStore open_store(const std::filesystem::path& root);
void write_store_metadata(const PredictionStore& store);

// Loads <root>/<naming> for the id. PFM files are read as-is; 16-bit PNG
// samples are divided by 65535. Throws MissingPredictionError, kFormatError
// or kNonFiniteDepth.
DepthPrediction load_depth(const PredictionStore& store, std::string_view sample_id);

void write_depth(const PredictionStore& store, std::string_view sample_id, const ImageF& field);

enum class Ordering { kP1Near, kP2Near, kTie };

std::string_view ordering_name(Ordering o);

// Compares the depth at two pixels under the prediction's polarity. A
// window > 1 replaces each lookup by the median of the edge-clamped
// window x window neighbourhood (window must be odd). Throws kBoundsError.
Ordering sample_ordering(const DepthPrediction& pred, Point p1, Point p2, int window = 1);

// Ordering implied by a ground-truth label.
constexpr Ordering to_ordering(OrdinalLabel label) {
  return label == OrdinalLabel::kFirstPointNear ? Ordering::kP1Near : Ordering::kP2Near;
}

}  // namespace lvp
