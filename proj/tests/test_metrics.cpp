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

#include "lvp/metrics.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace lvp {
namespace {

using testing::make_sample;
using testing::synthetic_manifest;
using testing::table_of;
using testing::TempDir;

constexpr auto kNear1 = OrdinalLabel::kFirstPointNear;
constexpr auto kNear2 = OrdinalLabel::kSecondPointNear;
constexpr Ordering kAllOrderings[] = {Ordering::kP1Near, Ordering::kP2Near, Ordering::kTie};

struct Tally {
  std::size_t n = 0, c1 = 0, c2 = 0, both = 0;
};

// Straight per-sample count with no shared code paths.
Tally oracle(const BenchmarkManifest& m, Subset subset, const std::vector<Ordering>& first,
             const std::vector<Ordering>& second) {
  Tally t;
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    const Sample& s = m.samples[i];
    const bool same = s.layer1 == s.layer2;
    if (subset == Subset::kSame && !same) continue;
    if (subset == Subset::kReverse && same) continue;
    const Ordering want1 = s.layer1 == kNear1 ? Ordering::kP1Near : Ordering::kP2Near;
    const Ordering want2 = s.layer2 == kNear1 ? Ordering::kP1Near : Ordering::kP2Near;
    const bool ok1 = first[i] == want1;
    const bool ok2 = second[i] == want2;
    ++t.n;
    t.c1 += ok1;
    t.c2 += ok2;
    t.both += ok1 && ok2;
  }
  return t;
}

std::vector<Ordering> random_orderings(std::size_t n, std::mt19937_64& rng, bool allow_ties = false) {
  std::vector<Ordering> out(n);
  for (auto& o : out) o = kAllOrderings[rng() % (allow_ties ? 3 : 2)];
  return out;
}

TEST(Sra, PerfectStore) {
  std::mt19937_64 rng(1);
  const BenchmarkManifest m = synthetic_manifest(200, rng);
  std::vector<Ordering> truth;
  for (const auto& s : m.samples) truth.push_back(to_ordering(s.layer1));
  const OrderingTable t = table_of(m, truth);
  EXPECT_EQ(sra(m, t, Layer::k1), 100.0);
  EXPECT_EQ(sra(m, t, Layer::k1, Subset::kReverse), 100.0);
  EXPECT_EQ(sra(m, t, Layer::k2, Subset::kReverse), 0.0);
  EXPECT_EQ(ml_sra(m, t, t, Subset::kSame), 100.0);
}

TEST(Sra, TiesCountIncorrect) {
  BenchmarkManifest m;
  m.samples.push_back(make_sample("a", {0, 0}, {1, 1}, kNear1, kNear2));
  m.samples.push_back(make_sample("b", {0, 0}, {1, 1}, kNear2, kNear1));
  const OrderingTable t = table_of(m, {Ordering::kTie, Ordering::kP2Near});
  const MetricReport r = evaluate_store(m, Subset::kReverse, t);
  EXPECT_EQ(r.correct1, 1U);
  EXPECT_EQ(r.correct2, 0U);
  EXPECT_EQ(r.ties, 1U);
  EXPECT_EQ(r.tie_rate, 50.0);
  EXPECT_EQ(r.sra1 + r.sra2, 50.0);
}

TEST(Sra, RandomStoreNearFifty) {
  std::mt19937_64 rng(2024);
  const BenchmarkManifest m = synthetic_manifest(10000, rng);
  const OrderingTable a = table_of(m, random_orderings(m.samples.size(), rng));
  const OrderingTable b = table_of(m, random_orderings(m.samples.size(), rng));
  EXPECT_NEAR(sra(m, a, Layer::k1), 50.0, 2.0);
  EXPECT_NEAR(sra(m, a, Layer::k2), 50.0, 2.0);
  EXPECT_NEAR(ml_sra(m, a, b), 25.0, 2.0);
}

TEST(Alpha, Examples) {
  EXPECT_EQ(layer_preference(50, 50), 0.0);
  EXPECT_NEAR(layer_preference(65.3, 34.7), -30.6, 1e-9);
  EXPECT_NEAR(layer_preference(15.9, 84.1), 68.2, 1e-9);
}

TEST(Gap, Examples) {
  MetricReport rgb;
  rgb.subset = "same";
  rgb.n = 1783;
  rgb.sra1 = 98.5;
  MetricReport lvp = rgb;
  EXPECT_EQ(sra_gap(rgb, rgb), 0.0);
  lvp.sra1 = 94.4;
  EXPECT_EQ(format_percent(sra_gap(rgb, lvp)), "4.1");
  rgb.subset = lvp.subset = "overall";
  rgb.sra1 = 96.9;
  lvp.sra1 = 91.5;
  EXPECT_EQ(format_percent(sra_gap(rgb, lvp)), "5.4");
  lvp.n = 7;
  EXPECT_THROW(sra_gap(rgb, lvp), Error);
  lvp.n = rgb.n;
  lvp.subset = "reverse";
  try {
    sra_gap(rgb, lvp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSubsetMismatch);
  }
}

TEST(Metrics, MissingPredictionNamesIds) {
  std::mt19937_64 rng(3);
  const BenchmarkManifest m = synthetic_manifest(30, rng);
  OrderingTable t;
  for (std::size_t i = 0; i < 15; ++i) t.set(m.samples[i].id, Ordering::kP1Near);
  try {
    sra(m, t, Layer::k1);
    FAIL();
  } catch (const MissingPredictionError& e) {
    ASSERT_EQ(e.ids().size(), 15U);
    EXPECT_EQ(e.ids().front(), m.samples[15].id);
    EXPECT_NE(std::string(e.what()).find("(5 more)"), std::string::npos);
  }
}

TEST(Metrics, EmptySubsetGivesNan) {
  BenchmarkManifest m;
  m.samples.push_back(make_sample("a", {0, 0}, {1, 1}, kNear1, kNear1));
  const MetricReport r = evaluate_store(m, Subset::kReverse, table_of(m, {Ordering::kP1Near}));
  EXPECT_EQ(r.n, 0U);
  EXPECT_TRUE(std::isnan(r.sra1));
}

TEST(Oracle, ExhaustiveSmallManifests) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t label_combos = std::size_t{1} << (2 * n);
    std::size_t order_combos = 1;
    for (std::size_t i = 0; i < n; ++i) order_combos *= 3;
    for (std::size_t lc = 0; lc < label_combos; ++lc) {
      BenchmarkManifest m;
      for (std::size_t i = 0; i < n; ++i) {
        const auto l1 = (lc >> (2 * i)) & 1U ? kNear2 : kNear1;
        const auto l2 = (lc >> (2 * i + 1)) & 1U ? kNear2 : kNear1;
        m.samples.push_back(make_sample(fmt::format("x{}", i), {0, 0}, {1, 0}, l1, l2));
      }
      for (std::size_t a = 0; a < order_combos; ++a) {
        std::vector<Ordering> first(n);
        for (std::size_t i = 0, code = a; i < n; ++i, code /= 3) first[i] = kAllOrderings[code % 3];
        for (std::size_t b = 0; b < order_combos; ++b) {
          std::vector<Ordering> second(n);
          for (std::size_t i = 0, code = b; i < n; ++i, code /= 3) second[i] = kAllOrderings[code % 3];
          const OrderingTable t1 = table_of(m, first);
          const OrderingTable t2 = table_of(m, second);
          for (auto subset : {Subset::kOverall, Subset::kSame, Subset::kReverse}) {
            const Tally want = oracle(m, subset, first, second);
            const MetricReport got = evaluate_pair(m, subset, t1, t2);
            ASSERT_EQ(got.n, want.n);
            ASSERT_EQ(got.correct1, want.c1);
            ASSERT_EQ(got.correct2, want.c2);
            ASSERT_EQ(*got.both_correct, want.both);
            const MetricReport single = evaluate_store(m, subset, t1);
            const Tally self = oracle(m, subset, first, first);
            ASSERT_EQ(single.correct1, self.c1);
            ASSERT_EQ(single.correct2, self.c2);
          }
        }
      }
    }
  }
}

TEST(Oracle, RandomManifestsUpToEight) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const BenchmarkManifest m = synthetic_manifest(rng() % 8 + 1, rng);
    const auto first = random_orderings(m.samples.size(), rng, true);
    const auto second = random_orderings(m.samples.size(), rng, true);
    for (auto subset : {Subset::kOverall, Subset::kSame, Subset::kReverse}) {
      const Tally want = oracle(m, subset, first, second);
      const MetricReport got = evaluate_pair(m, subset, table_of(m, first), table_of(m, second));
      ASSERT_EQ(got.n, want.n);
      if (want.n == 0) continue;
      EXPECT_EQ(got.sra1, 100.0 * static_cast<double>(want.c1) / static_cast<double>(want.n));
      EXPECT_EQ(got.sra2, 100.0 * static_cast<double>(want.c2) / static_cast<double>(want.n));
      EXPECT_EQ(*got.ml_sra, 100.0 * static_cast<double>(want.both) / static_cast<double>(want.n));
      EXPECT_EQ(got.alpha, got.sra2 - got.sra1);
    }
  }
}

TEST(Properties, ReverseComplementAndSameEquality) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const BenchmarkManifest m = synthetic_manifest(rng() % 300 + 1, rng);
    const OrderingTable t = table_of(m, random_orderings(m.samples.size(), rng));
    const MetricReport rev = evaluate_store(m, Subset::kReverse, t);
    if (rev.n > 0) {
      EXPECT_EQ(rev.ties, 0U);
      EXPECT_EQ(rev.correct1 + rev.correct2, rev.n);
      EXPECT_NEAR(rev.sra1 + rev.sra2, 100.0, 1e-9);
    }
    const MetricReport same = evaluate_store(m, Subset::kSame, t);
    EXPECT_EQ(same.correct1, same.correct2);
    if (same.n > 0) EXPECT_EQ(same.sra1, same.sra2);
  }
}

TEST(Properties, LabelSwapNegatesAlpha) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const BenchmarkManifest m = synthetic_manifest(rng() % 100 + 1, rng);
    BenchmarkManifest swapped = m;
    for (auto& s : swapped.samples) std::swap(s.layer1, s.layer2);
    const OrderingTable t = table_of(m, random_orderings(m.samples.size(), rng, true));
    for (auto subset : {Subset::kOverall, Subset::kSame, Subset::kReverse}) {
      const MetricReport a = evaluate_store(m, subset, t);
      const MetricReport b = evaluate_store(swapped, subset, t);
      if (a.n == 0) continue;
      EXPECT_EQ(b.alpha, -a.alpha);
    }
  }
}

TEST(Properties, MlSraBoundedByLayerSra) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const BenchmarkManifest m = synthetic_manifest(rng() % 50 + 1, rng);
    const OrderingTable a = table_of(m, random_orderings(m.samples.size(), rng, true));
    const OrderingTable b = table_of(m, random_orderings(m.samples.size(), rng, true));
    const MetricReport r = evaluate_pair(m, Subset::kOverall, a, b);
    EXPECT_LE(*r.ml_sra, std::min(sra(m, a, Layer::k1), sra(m, b, Layer::k2)));
  }
}

TEST(Properties, IdenticalStoresOnReverseGiveZero) {
  std::mt19937_64 rng(8);
  const BenchmarkManifest m = synthetic_manifest(500, rng, 1.0);
  const OrderingTable t = table_of(m, random_orderings(m.samples.size(), rng));
  EXPECT_EQ(ml_sra(m, t, t, Subset::kReverse), 0.0);
}

TEST(CollectOrderings, ReadsStoreAndGathersMissing) {
  TempDir dir;
  std::mt19937_64 rng(10);
  const BenchmarkManifest m = synthetic_manifest(25, rng);
  const auto truth = random_orderings(m.samples.size(), rng, true);
  const PredictionStore store = testing::write_store(dir.path(), m, truth);
  for (int jobs : {1, 4}) {
    const OrderingTable t = collect_orderings(m, open_store(dir.path()), {jobs, 1});
    for (std::size_t i = 0; i < m.samples.size(); ++i) EXPECT_EQ(t.find(m.samples[i].id), truth[i]);
  }
  std::filesystem::remove(store.path_for(m.samples[3].id));
  std::filesystem::remove(store.path_for(m.samples[17].id));
  try {
    collect_orderings(m, store, {4, 1});
    FAIL();
  } catch (const MissingPredictionError& e) {
    EXPECT_EQ(e.ids(), (std::vector<std::string>{m.samples[3].id, m.samples[17].id}));
  }
}

TEST(CollectOrderings, PolarityFromStore) {
  TempDir dir;
  std::mt19937_64 rng(11);
  const BenchmarkManifest m = synthetic_manifest(10, rng);
  const auto truth = random_orderings(m.samples.size(), rng);
  PredictionStore store = testing::write_store(dir.path(), m, truth);
  store.polarity = Polarity::kLargerIsFarther;
  write_store_metadata(store);
  const OrderingTable t = collect_orderings(m, open_store(dir.path()), {1, 1});
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    EXPECT_EQ(t.find(m.samples[i].id), truth[i] == Ordering::kP1Near ? Ordering::kP2Near : Ordering::kP1Near);
  }
}

}  // namespace
}  // namespace lvp
