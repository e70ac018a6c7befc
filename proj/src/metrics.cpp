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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "lvp/parallel.hpp"

namespace lvp {

std::optional<Ordering> OrderingTable::find(std::string_view id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

OrderingTable collect_orderings(const BenchmarkManifest& manifest, const PredictionStore& store,
                                const EvalOptions& options) {
  const auto& samples = manifest.samples;
  std::vector<std::optional<Ordering>> slots(samples.size());
  std::vector<char> missing(samples.size(), 0);
  parallel_for(samples.size(), options.jobs, [&](std::size_t i) {
    const Sample& s = samples[i];
    if (!store.has(s.id)) {
      missing[i] = 1;
      return;
    }
    const DepthPrediction pred = load_depth(store, s.id);
    try {
      slots[i] = sample_ordering(pred, s.p1, s.p2, options.median_window);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("sample {}: {}", s.id, e.what()));
    }
  });

  std::vector<std::string> missing_ids;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (missing[i]) missing_ids.push_back(samples[i].id);
  }
  if (!missing_ids.empty()) throw MissingPredictionError(std::move(missing_ids));

  OrderingTable table(store.metadata.value("tag", store.root.filename().string()));
  for (std::size_t i = 0; i < samples.size(); ++i) table.set(samples[i].id, *slots[i]);
  return table;
}

double percent(std::size_t count, std::size_t n) {
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return 100.0 * static_cast<double>(count) / static_cast<double>(n);
}

std::vector<LayerOutcome> layer_outcomes(const BenchmarkManifest& manifest, Subset subset,
                                         const OrderingTable& layer1, const OrderingTable& layer2) {
  std::vector<const Sample*> chosen = manifest.subset(subset);
  std::sort(chosen.begin(), chosen.end(), [](const Sample* a, const Sample* b) { return a->id < b->id; });

  std::vector<std::string> missing;
  std::vector<LayerOutcome> out;
  out.reserve(chosen.size());
  for (const Sample* s : chosen) {
    const auto o1 = layer1.find(s->id);
    const auto o2 = layer2.find(s->id);
    if (!o1 || !o2) {
      missing.push_back(s->id);
      continue;
    }
    LayerOutcome r;
    r.id = s->id;
    r.layer1_prediction = *o1;
    r.layer2_prediction = *o2;
    r.layer1_correct = *o1 == to_ordering(s->layer1);
    r.layer2_correct = *o2 == to_ordering(s->layer2);
    out.push_back(std::move(r));
  }
  if (!missing.empty()) throw MissingPredictionError(std::move(missing));
  return out;
}

double sra(const BenchmarkManifest& manifest, const OrderingTable& predictions, Layer layer, Subset subset) {
  const auto outcomes = layer_outcomes(manifest, subset, predictions, predictions);
  const auto correct = std::count_if(outcomes.begin(), outcomes.end(), [layer](const LayerOutcome& o) {
    return layer == Layer::k1 ? o.layer1_correct : o.layer2_correct;
  });
  return percent(static_cast<std::size_t>(correct), outcomes.size());
}

double layer_preference(double sra1, double sra2) { return sra2 - sra1; }

double ml_sra(const BenchmarkManifest& manifest, const OrderingTable& layer1, const OrderingTable& layer2,
              Subset subset) {
  const auto outcomes = layer_outcomes(manifest, subset, layer1, layer2);
  const auto both = std::count_if(outcomes.begin(), outcomes.end(), [](const LayerOutcome& o) { return o.both_correct(); });
  return percent(static_cast<std::size_t>(both), outcomes.size());
}

namespace {

MetricReport tally(Subset subset, const std::vector<LayerOutcome>& outcomes, bool paired) {
  MetricReport r;
  r.subset = std::string(subset_name(subset));
  r.n = outcomes.size();
  std::size_t both = 0;
  for (const auto& o : outcomes) {
    r.correct1 += o.layer1_correct ? 1 : 0;
    r.correct2 += o.layer2_correct ? 1 : 0;
    r.ties += o.any_tie() ? 1 : 0;
    both += o.both_correct() ? 1 : 0;
  }
  r.sra1 = percent(r.correct1, r.n);
  r.sra2 = percent(r.correct2, r.n);
  r.alpha = layer_preference(r.sra1, r.sra2);
  r.tie_rate = percent(r.ties, r.n);
  if (paired) {
    r.both_correct = both;
    r.ml_sra = percent(both, r.n);
  }
  return r;
}

}  // namespace

MetricReport evaluate_store(const BenchmarkManifest& manifest, Subset subset, const OrderingTable& predictions) {
  return tally(subset, layer_outcomes(manifest, subset, predictions, predictions), false);
}

MetricReport evaluate_pair(const BenchmarkManifest& manifest, Subset subset, const OrderingTable& layer1,
                           const OrderingTable& layer2) {
  return tally(subset, layer_outcomes(manifest, subset, layer1, layer2), true);
}

double sra_gap(const MetricReport& rgb, const MetricReport& lvp, Layer layer) {
  if (rgb.subset != lvp.subset || rgb.n != lvp.n) {
    throw Error(ErrorCode::kSubsetMismatch, fmt::format("cannot compare {} (n={}) with {} (n={})", rgb.subset, rgb.n,
                                                        lvp.subset, lvp.n));
  }
  return layer == Layer::k1 ? rgb.sra1 - lvp.sra1 : rgb.sra2 - lvp.sra2;
}

}  // namespace lvp
