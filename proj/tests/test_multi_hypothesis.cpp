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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace lvp {
namespace {

using testing::make_sample;
using testing::synthetic_manifest;
using testing::table_of;

constexpr auto kNear1 = OrdinalLabel::kFirstPointNear;
constexpr auto kNear2 = OrdinalLabel::kSecondPointNear;

std::vector<Ordering> layer_truth(const BenchmarkManifest& m, Layer layer) {
  std::vector<Ordering> out;
  for (const auto& s : m.samples) out.push_back(to_ordering(layer == Layer::k1 ? s.layer1 : s.layer2));
  return out;
}

std::vector<Ordering> random_strict(std::size_t n, std::mt19937_64& rng) {
  std::vector<Ordering> out(n);
  for (auto& o : out) o = (rng() & 1U) ? Ordering::kP1Near : Ordering::kP2Near;
  return out;
}

const MetricReport& report_for(const CombinedResult& r, std::string_view subset) {
  for (const auto& m : r.reports) {
    if (m.subset == subset) return m;
  }
  throw std::logic_error("subset not found");
}

TEST(Assign, RgbMatchingLayerOneGoesFirst) {
  std::mt19937_64 rng(1);
  const BenchmarkManifest m = synthetic_manifest(100, rng, 1.0);
  const OrderingTable rgb = table_of(m, layer_truth(m, Layer::k1));
  const OrderingTable lvp = table_of(m, layer_truth(m, Layer::k2));
  const HypothesisAssignment a = assign_by_alpha(m, rgb, lvp);
  EXPECT_EQ(a.layer1_source, HypothesisSource::kRgb);
  EXPECT_EQ(a.layer2_source, HypothesisSource::kLvp);
  EXPECT_EQ(a.method, AssignmentMethod::kCalibratedAlpha);
  EXPECT_EQ(*a.alpha_rgb, -100.0);
  EXPECT_EQ(*a.alpha_lvp, 100.0);
  EXPECT_FALSE(a.defaulted);
  EXPECT_EQ(a.calib_ids.size(), 100U);
  EXPECT_TRUE(std::is_sorted(a.calib_ids.begin(), a.calib_ids.end()));
}

TEST(Assign, RgbMatchingLayerTwoGoesSecond) {
  std::mt19937_64 rng(2);
  const BenchmarkManifest m = synthetic_manifest(100, rng, 1.0);
  const OrderingTable rgb = table_of(m, layer_truth(m, Layer::k2));
  const OrderingTable lvp = table_of(m, layer_truth(m, Layer::k1));
  const HypothesisAssignment a = assign_by_alpha(m, rgb, lvp);
  EXPECT_EQ(*a.alpha_rgb, 100.0);
  EXPECT_EQ(a.layer1_source, HypothesisSource::kLvp);
  EXPECT_EQ(a.layer2_source, HypothesisSource::kRgb);
}

TEST(Assign, ReverseCalibrationWithNegativeAlpha) {
  // 1,378 reverse pairs, RGB correct on layer 1 for 900 of them.
  BenchmarkManifest m;
  std::vector<Ordering> rgb;
  std::vector<Ordering> lvp;
  for (int i = 0; i < 1378; ++i) {
    m.samples.push_back(make_sample(fmt::format("r{:04d}", i), {0, 0}, {1, 0}, kNear1, kNear2));
    rgb.push_back(i < 900 ? Ordering::kP1Near : Ordering::kP2Near);
    lvp.push_back(i < 219 ? Ordering::kP1Near : Ordering::kP2Near);
  }
  const HypothesisAssignment a = assign_by_alpha(m, table_of(m, rgb), table_of(m, lvp));
  EXPECT_EQ(format_percent(*a.alpha_rgb), "-30.6");
  EXPECT_EQ(format_percent(*a.alpha_lvp), "68.2");
  EXPECT_EQ(a.layer1_source, HypothesisSource::kRgb);
}

TEST(Assign, TieBreaksAndDefault) {
  BenchmarkManifest m;
  m.samples.push_back(make_sample("a", {0, 0}, {1, 0}, kNear1, kNear2));
  m.samples.push_back(make_sample("b", {0, 0}, {1, 0}, kNear1, kNear2));
  // RGB alpha 0; LVP prefers layer 2 so it takes layer 2.
  HypothesisAssignment a = assign_by_alpha(m, table_of(m, {Ordering::kP1Near, Ordering::kP2Near}),
                                           table_of(m, {Ordering::kP2Near, Ordering::kP2Near}));
  EXPECT_EQ(a.layer2_source, HypothesisSource::kLvp);
  EXPECT_FALSE(a.defaulted);
  // LVP prefers layer 1.
  a = assign_by_alpha(m, table_of(m, {Ordering::kP1Near, Ordering::kP2Near}),
                      table_of(m, {Ordering::kP1Near, Ordering::kP1Near}));
  EXPECT_EQ(a.layer1_source, HypothesisSource::kLvp);
  // Both zero.
  a = assign_by_alpha(m, table_of(m, {Ordering::kTie, Ordering::kTie}),
                      table_of(m, {Ordering::kP1Near, Ordering::kP2Near}));
  EXPECT_TRUE(a.defaulted);
  EXPECT_EQ(a.layer1_source, HypothesisSource::kRgb);
  EXPECT_EQ(a.to_json()["calibration"]["defaulted"], true);
}

TEST(Assign, EmptyCalibration) {
  try {
    assign_by_alpha(BenchmarkManifest{}, OrderingTable{}, OrderingTable{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCalibration);
  }
}

TEST(Assign, MissingPrediction) {
  BenchmarkManifest m;
  m.samples.push_back(make_sample("a", {0, 0}, {1, 0}, kNear1, kNear2));
  EXPECT_THROW(assign_by_alpha(m, OrderingTable{}, table_of(m, {Ordering::kP1Near})), MissingPredictionError);
}

TEST(Combine, IdenticalPerfectStoresOnSame) {
  std::mt19937_64 rng(3);
  const BenchmarkManifest m = synthetic_manifest(80, rng);
  const OrderingTable t = table_of(m, layer_truth(m, Layer::k1));
  const CombinedResult r = combine(m, HypothesisAssignment::fixed(AssignmentMethod::kFixedRgbFirst), t, t);
  EXPECT_EQ(*report_for(r, "same").ml_sra, 100.0);
  EXPECT_EQ(*report_for(r, "reverse").ml_sra, 0.0);
  ASSERT_EQ(r.reports.size(), 3U);
  EXPECT_EQ(r.pairs.size(), 80U);
}

TEST(Combine, UsesAssignedSources) {
  std::mt19937_64 rng(4);
  const BenchmarkManifest m = synthetic_manifest(60, rng, 1.0);
  const OrderingTable rgb = table_of(m, layer_truth(m, Layer::k1));
  const OrderingTable lvp = table_of(m, layer_truth(m, Layer::k2));
  const CombinedResult good = combine(m, HypothesisAssignment::fixed(AssignmentMethod::kFixedRgbFirst), rgb, lvp);
  const CombinedResult bad = combine(m, HypothesisAssignment::fixed(AssignmentMethod::kFixedLvpFirst), rgb, lvp);
  EXPECT_EQ(*report_for(good, "overall").ml_sra, 100.0);
  EXPECT_EQ(*report_for(bad, "overall").ml_sra, 0.0);
  EXPECT_EQ(bad.assignment.layer1_source, HypothesisSource::kLvp);
  EXPECT_EQ(good.assignment.to_json()["method"], "rgb_first");
}

TEST(Properties, FlipOnReverseTurnsBothCorrectIntoBothWrong) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const BenchmarkManifest m = synthetic_manifest(rng() % 60 + 1, rng, 1.0);
    const OrderingTable rgb = table_of(m, random_strict(m.samples.size(), rng));
    const OrderingTable lvp = table_of(m, random_strict(m.samples.size(), rng));
    const auto a = HypothesisAssignment::fixed(AssignmentMethod::kFixedRgbFirst);
    const CombinedResult x = combine(m, a, rgb, lvp);
    const CombinedResult y = combine(m, a.flipped(), rgb, lvp);
    ASSERT_EQ(x.pairs.size(), y.pairs.size());
    for (std::size_t i = 0; i < x.pairs.size(); ++i) {
      if (!x.pairs[i].both_correct) continue;
      const Sample& s = *std::find_if(m.samples.begin(), m.samples.end(),
                                      [&](const Sample& c) { return c.id == y.pairs[i].id; });
      EXPECT_NE(y.pairs[i].layer1, to_ordering(s.layer1));
      EXPECT_NE(y.pairs[i].layer2, to_ordering(s.layer2));
    }
  }
}

TEST(Properties, IdenticalStoresOnReverseAlwaysZero) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const BenchmarkManifest m = synthetic_manifest(rng() % 100 + 1, rng);
    const OrderingTable t = table_of(m, random_strict(m.samples.size(), rng));
    const CombinedResult r = combine(m, HypothesisAssignment::fixed(AssignmentMethod::kFixedRgbFirst), t, t);
    const MetricReport& rev = report_for(r, "reverse");
    if (rev.n) EXPECT_EQ(*rev.ml_sra, 0.0);
  }
}

TEST(Split, DeterministicAndDisjoint) {
  std::mt19937_64 rng(7);
  const BenchmarkManifest m = synthetic_manifest(101, rng);
  const CalibrationSplit a = split_for_calibration(m, 0.3);
  const CalibrationSplit b = split_for_calibration(m, 0.3);
  EXPECT_EQ(a.calibration.samples.size(), 31U);
  EXPECT_EQ(a.evaluation.samples.size(), 70U);
  EXPECT_EQ(serialize_manifest(a.calibration), serialize_manifest(b.calibration));
  std::set<std::string> seen;
  for (const auto& s : a.calibration.samples) seen.insert(s.id);
  for (const auto& s : a.evaluation.samples) EXPECT_FALSE(seen.contains(s.id));
  // Order of the input does not change membership.
  BenchmarkManifest reversed = m;
  std::reverse(reversed.samples.begin(), reversed.samples.end());
  for (const auto& s : split_for_calibration(reversed, 0.3).calibration.samples) EXPECT_TRUE(seen.contains(s.id));
  EXPECT_THROW(split_for_calibration(m, 0.0), Error);
  EXPECT_THROW(split_for_calibration(m, 1.0), Error);
}

}  // namespace
}  // namespace lvp
