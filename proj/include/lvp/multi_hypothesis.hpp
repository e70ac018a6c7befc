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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvp/benchmark_data.hpp"
#include "lvp/metrics.hpp"

namespace lvp {

enum class HypothesisSource { kRgb, kLvp };

std::string_view source_name(HypothesisSource s);  // "rgb" / "lvp"

enum class AssignmentMethod { kFixedRgbFirst, kFixedLvpFirst, kCalibratedAlpha };

std::string_view method_name(AssignmentMethod m);  // "rgb_first" / "lvp_first" / "calibrated_alpha"

// Which prediction source stands in for which annotated depth layer.
struct HypothesisAssignment {
  HypothesisSource layer1_source = HypothesisSource::kRgb;
  HypothesisSource layer2_source = HypothesisSource::kLvp;
  AssignmentMethod method = AssignmentMethod::kFixedRgbFirst;

  // Calibration provenance, set for kCalibratedAlpha.
  std::vector<std::string> calib_ids;
  std::string calib_mode;  // "full" or "split:<fraction>"
  std::optional<double> alpha_rgb;
  std::optional<double> alpha_lvp;
  // Both calibration alphas were zero and the RGB-first default was used.
  bool defaulted = false;

  static HypothesisAssignment fixed(AssignmentMethod method);
  HypothesisAssignment flipped() const;
  nlohmann::json to_json() const;
};

// Decides the layer assignment from the sign of the RGB store's layer
// preference on the calibration samples:
//   alpha_rgb < 0  -> RGB is layer 1, LVP is layer 2
//   alpha_rgb > 0  -> RGB is layer 2, LVP is layer 1
//   alpha_rgb == 0 -> LVP decides: alpha_lvp > 0 puts LVP on layer 2,
//                     alpha_lvp < 0 puts LVP on layer 1
//   both zero      -> RGB first, `defaulted` set
// The sign is taken from integer counts, so it is exact.
// Throws kEmptyCalibration and MissingPredictionError.
HypothesisAssignment assign_by_alpha(const BenchmarkManifest& calibration, const OrderingTable& rgb,
                                     const OrderingTable& lvp);

// Calibration / evaluation split for held-out assignment. Samples are ranked
// by a hash of their id and the first ceil(fraction * n) calibrate.
struct CalibrationSplit {
  BenchmarkManifest calibration;
  BenchmarkManifest evaluation;
};
CalibrationSplit split_for_calibration(const BenchmarkManifest& manifest, double fraction);

struct HypothesisPair {
  std::string id;
  Ordering layer1 = Ordering::kTie;
  Ordering layer2 = Ordering::kTie;
  bool both_correct = false;
};

struct CombinedResult {
  HypothesisAssignment assignment;
  std::vector<HypothesisPair> pairs;  // sorted by id
  std::vector<MetricReport> reports;  // overall, same, reverse
};

CombinedResult combine(const BenchmarkManifest& manifest, const HypothesisAssignment& assignment,
                       const OrderingTable& rgb, const OrderingTable& lvp);

}  // namespace lvp
