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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvp/benchmark_data.hpp"
#include "lvp/depth_backend.hpp"

namespace lvp {

// Predicted point-pair orderings of one prediction source, keyed by sample id.
class OrderingTable {
 public:
  OrderingTable() = default;
  explicit OrderingTable(std::string source_tag) : source_tag_(std::move(source_tag)) {}

  void set(std::string id, Ordering o) { entries_.insert_or_assign(std::move(id), o); }
  std::optional<Ordering> find(std::string_view id) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::string& source_tag() const noexcept { return source_tag_; }
  const std::map<std::string, Ordering, std::less<>>& entries() const noexcept { return entries_; }

 private:
  std::string source_tag_;
  std::map<std::string, Ordering, std::less<>> entries_;
};

struct EvalOptions {
  int jobs = 0;           // 0 = hardware concurrency
  int median_window = 1;  // see sample_ordering
};

// Loads every sample's depth from the store and records its ordering.
// Missing files are gathered and reported together as one
// MissingPredictionError (manifest order).
OrderingTable collect_orderings(const BenchmarkManifest& manifest, const PredictionStore& store,
                                const EvalOptions& options = {});

enum class Layer { k1 = 1, k2 = 2 };

struct LayerOutcome {
  std::string id;
  Ordering layer1_prediction = Ordering::kTie;
  Ordering layer2_prediction = Ordering::kTie;
  bool layer1_correct = false;
  bool layer2_correct = false;

  bool both_correct() const noexcept { return layer1_correct && layer2_correct; }
  bool any_tie() const noexcept {
    return layer1_prediction == Ordering::kTie || layer2_prediction == Ordering::kTie;
  }
};

// Per-sample correctness for the chosen subset, sorted by id. The layer-1
// hypothesis is scored against layer-1 labels and the layer-2 hypothesis
// against layer-2 labels; pass one table twice for single-store scoring.
// A tie is never correct.
std::vector<LayerOutcome> layer_outcomes(const BenchmarkManifest& manifest, Subset subset,
                                         const OrderingTable& layer1, const OrderingTable& layer2);

// Spatial relationship accuracy in percent. NaN on an empty subset.
double sra(const BenchmarkManifest& manifest, const OrderingTable& predictions, Layer layer,
           Subset subset = Subset::kOverall);

// SRA(2) - SRA(1). Positive means the prediction sides with layer 2.
double layer_preference(double sra1, double sra2);

// Percent of samples where both hypotheses order the pair correctly for
// their own layer.
double ml_sra(const BenchmarkManifest& manifest, const OrderingTable& layer1, const OrderingTable& layer2,
              Subset subset = Subset::kOverall);

struct MetricReport {
  std::string subset;
  std::size_t n = 0;
  std::size_t correct1 = 0;
  std::size_t correct2 = 0;
  std::size_t ties = 0;
  double sra1 = 0.0;
  double sra2 = 0.0;
  double alpha = 0.0;
  double tie_rate = 0.0;
  std::optional<std::size_t> both_correct;
  std::optional<double> ml_sra;
};

// One store scored against both label layers.
MetricReport evaluate_store(const BenchmarkManifest& manifest, Subset subset, const OrderingTable& predictions);

// Two assigned hypotheses: sra1/sra2 are each hypothesis on its own layer,
// plus ML-SRA. tie_rate counts samples where either hypothesis ties.
MetricReport evaluate_pair(const BenchmarkManifest& manifest, Subset subset, const OrderingTable& layer1,
                           const OrderingTable& layer2);

// SRA(rgb) - SRA(lvp) on one layer. Throws kSubsetMismatch when the reports
// cover different subsets or sample counts.
double sra_gap(const MetricReport& rgb, const MetricReport& lvp, Layer layer = Layer::k1);

double percent(std::size_t count, std::size_t n);

}  // namespace lvp
