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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvp/metrics.hpp"
#include "lvp/multi_hypothesis.hpp"

namespace lvp {

struct StoreInfo {
  std::string role;  // "predictions", "rgb", "lvp"
  std::string path;
  Polarity polarity = Polarity::kLargerIsCloser;
  std::string tag;
};

// One evaluation run: provenance plus per-subset metrics.
struct EvalReport {
  std::string mode;  // "single" or "ml"
  std::string manifest_path;
  std::string schema_version = "1";
  bool single_layer = false;
  std::map<std::string, std::string> tags;  // model, size, modality, benchmark
  nlohmann::json config = nlohmann::json::object();
  std::vector<StoreInfo> stores;
  std::vector<MetricReport> subsets;
  std::optional<HypothesisAssignment> assignment;

  // Hash over everything except the metric values; stable across --jobs.
  std::string config_hash() const;
  const MetricReport* find(std::string_view subset) const;
};

nlohmann::json to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& doc);
EvalReport read_report(const std::filesystem::path& path);

// Percentages at one decimal place; NaN prints as "n/a".
std::string format_percent(double value);

// Plain rectangular table rendered as CSV or GitHub Markdown.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& table);
std::string to_markdown(const Table& table);

// Long-form per-subset table for one run.
Table subset_table(const EvalReport& report);

// Cross-run pivots. Rows follow first appearance of a model; size columns
// run S, B, L first and then any other sizes in first-seen order.
// Throws kTagMissing when a report lacks model or size (or modality for a
// single-store report) and kInvalidArgument on duplicate runs.
struct Pivots {
  Table sra_table;       // rows model-size, columns benchmark x subset x modality x layer
  Table ml_sra_table;    // rows model-size, columns overall/reverse/same
  Table alpha_vs_scale;  // reverse-subset alpha, rows model x modality
  Table ml_sra_vs_scale; // reverse-subset ML-SRA, rows model
  Table gap_vs_scale;    // RGB - LVP SRA on same (or single-layer overall)
};

Pivots build_pivots(const std::vector<EvalReport>& reports);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lvp
