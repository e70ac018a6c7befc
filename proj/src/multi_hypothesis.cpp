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

#include "lvp/multi_hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <fmt/format.h>

#include "lvp/hash.hpp"

namespace lvp {

std::string_view source_name(HypothesisSource s) { return s == HypothesisSource::kRgb ? "rgb" : "lvp"; }

std::string_view method_name(AssignmentMethod m) {
  switch (m) {
    case AssignmentMethod::kFixedRgbFirst: return "rgb_first";
    case AssignmentMethod::kFixedLvpFirst: return "lvp_first";
    case AssignmentMethod::kCalibratedAlpha: return "calibrated_alpha";
  }
  return "rgb_first";
}

HypothesisAssignment HypothesisAssignment::fixed(AssignmentMethod method) {
  HypothesisAssignment a;
  a.method = method;
  if (method == AssignmentMethod::kFixedLvpFirst) {
    a.layer1_source = HypothesisSource::kLvp;
    a.layer2_source = HypothesisSource::kRgb;
  }
  return a;
}

HypothesisAssignment HypothesisAssignment::flipped() const {
  HypothesisAssignment a = *this;
  std::swap(a.layer1_source, a.layer2_source);
  return a;
}

nlohmann::json HypothesisAssignment::to_json() const {
  nlohmann::json j{{"layer1_source", source_name(layer1_source)},
                   {"layer2_source", source_name(layer2_source)},
                   {"method", method_name(method)}};
  if (method == AssignmentMethod::kCalibratedAlpha) {
    j["calibration"] = {{"mode", calib_mode},
                        {"n", calib_ids.size()},
                        {"ids", calib_ids},
                        {"alpha_rgb", alpha_rgb ? nlohmann::json(*alpha_rgb) : nlohmann::json()},
                        {"alpha_lvp", alpha_lvp ? nlohmann::json(*alpha_lvp) : nlohmann::json()},
                        {"defaulted", defaulted}};
  }
  return j;
}

namespace {

// Sign of SRA(2) - SRA(1) from the underlying counts.
int preference_sign(const MetricReport& r) {
  if (r.correct2 > r.correct1) return 1;
  if (r.correct2 < r.correct1) return -1;
  return 0;
}

}  // namespace

HypothesisAssignment assign_by_alpha(const BenchmarkManifest& calibration, const OrderingTable& rgb,
                                     const OrderingTable& lvp) {
  if (calibration.samples.empty()) throw Error(ErrorCode::kEmptyCalibration, "calibration subset has no samples");
  const MetricReport rgb_report = evaluate_store(calibration, Subset::kOverall, rgb);
  const MetricReport lvp_report = evaluate_store(calibration, Subset::kOverall, lvp);

  HypothesisAssignment a;
  a.method = AssignmentMethod::kCalibratedAlpha;
  a.alpha_rgb = rgb_report.alpha;
  a.alpha_lvp = lvp_report.alpha;
  a.calib_mode = "full";
  a.calib_ids.reserve(calibration.samples.size());
  for (const auto& s : calibration.samples) a.calib_ids.push_back(s.id);
  std::sort(a.calib_ids.begin(), a.calib_ids.end());

  bool rgb_first = true;
  if (const int rgb_sign = preference_sign(rgb_report); rgb_sign != 0) {
    rgb_first = rgb_sign < 0;
  } else if (const int lvp_sign = preference_sign(lvp_report); lvp_sign != 0) {
    rgb_first = lvp_sign > 0;
  } else {
    a.defaulted = true;
  }
  a.layer1_source = rgb_first ? HypothesisSource::kRgb : HypothesisSource::kLvp;
  a.layer2_source = rgb_first ? HypothesisSource::kLvp : HypothesisSource::kRgb;
  return a;
}

CalibrationSplit split_for_calibration(const BenchmarkManifest& manifest, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("calibration fraction must be in (0, 1), got {}", fraction));
  }
  std::vector<const Sample*> ranked;
  ranked.reserve(manifest.samples.size());
  for (const auto& s : manifest.samples) ranked.push_back(&s);
  std::sort(ranked.begin(), ranked.end(), [](const Sample* a, const Sample* b) {
    const auto ha = fnv1a64(a->id);
    const auto hb = fnv1a64(b->id);
    return ha != hb ? ha < hb : a->id < b->id;
  });
  const auto take = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(ranked.size())));

  CalibrationSplit split;
  split.calibration.schema_version = split.evaluation.schema_version = manifest.schema_version;
  split.calibration.single_layer = split.evaluation.single_layer = manifest.single_layer;
  std::vector<char> in_calib(manifest.samples.size(), 0);
  for (std::size_t i = 0; i < take && i < ranked.size(); ++i) {
    in_calib[static_cast<std::size_t>(ranked[i] - manifest.samples.data())] = 1;
  }
  for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
    (in_calib[i] ? split.calibration : split.evaluation).samples.push_back(manifest.samples[i]);
  }
  return split;
}

CombinedResult combine(const BenchmarkManifest& manifest, const HypothesisAssignment& assignment,
                       const OrderingTable& rgb, const OrderingTable& lvp) {
  if (assignment.layer1_source == assignment.layer2_source) {
    throw Error(ErrorCode::kInvalidArgument, "both layers assigned to the same source");
  }
  const OrderingTable& first = assignment.layer1_source == HypothesisSource::kRgb ? rgb : lvp;
  const OrderingTable& second = assignment.layer1_source == HypothesisSource::kRgb ? lvp : rgb;

  CombinedResult result;
  result.assignment = assignment;
  for (const auto& o : layer_outcomes(manifest, Subset::kOverall, first, second)) {
    result.pairs.push_back({o.id, o.layer1_prediction, o.layer2_prediction, o.both_correct()});
  }
  for (auto subset : {Subset::kOverall, Subset::kSame, Subset::kReverse}) {
    result.reports.push_back(evaluate_pair(manifest, subset, first, second));
  }
  return result;
}

}  // namespace lvp
