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

#include "lvp/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "lvp/hash.hpp"
#include "lvp/version.hpp"

namespace lvp {

using nlohmann::json;

namespace {

json provenance(const EvalReport& r) {
  json stores = json::array();
  for (const auto& s : r.stores) {
    stores.push_back({{"role", s.role}, {"path", s.path}, {"polarity", polarity_name(s.polarity)}, {"tag", s.tag}});
  }
  return json{{"mode", r.mode},
              {"manifest", {{"path", r.manifest_path}, {"schema_version", r.schema_version}, {"single_layer", r.single_layer}}},
              {"tags", r.tags},
              {"config", r.config},
              {"stores", std::move(stores)}};
}

json metric_json(const MetricReport& m) {
  json j{{"subset", m.subset}, {"n", m.n},         {"correct1", m.correct1}, {"correct2", m.correct2},
         {"ties", m.ties},     {"sra1", m.sra1},   {"sra2", m.sra2},         {"alpha", m.alpha},
         {"tie_rate", m.tie_rate}};
  if (m.ml_sra) {
    j["both_correct"] = *m.both_correct;
    j["ml_sra"] = *m.ml_sra;
  }
  return j;
}

double number_or_nan(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::numeric_limits<double>::quiet_NaN();
  return it->get<double>();
}

MetricReport metric_from_json(const json& j) {
  MetricReport m;
  m.subset = j.at("subset").get<std::string>();
  m.n = j.at("n").get<std::size_t>();
  m.correct1 = j.value("correct1", std::size_t{0});
  m.correct2 = j.value("correct2", std::size_t{0});
  m.ties = j.value("ties", std::size_t{0});
  m.sra1 = number_or_nan(j, "sra1");
  m.sra2 = number_or_nan(j, "sra2");
  m.alpha = number_or_nan(j, "alpha");
  m.tie_rate = number_or_nan(j, "tie_rate");
  if (j.contains("ml_sra")) {
    m.ml_sra = number_or_nan(j, "ml_sra");
    m.both_correct = j.value("both_correct", std::size_t{0});
  }
  return m;
}

}  // namespace

std::string EvalReport::config_hash() const { return hex_digest(provenance(*this).dump()); }

const MetricReport* EvalReport::find(std::string_view subset) const {
  for (const auto& m : subsets) {
    if (m.subset == subset) return &m;
  }
  return nullptr;
}

json to_json(const EvalReport& report) {
  json doc = provenance(report);
  doc["toolkit"] = {{"name", kToolkitName}, {"version", kToolkitVersion}};
  doc["config_hash"] = report.config_hash();
  json subsets = json::array();
  for (const auto& m : report.subsets) subsets.push_back(metric_json(m));
  doc["subsets"] = std::move(subsets);
  if (report.assignment) doc["assignment"] = report.assignment->to_json();
  return doc;
}

EvalReport report_from_json(const json& doc) {
  try {
    EvalReport r;
    r.mode = doc.at("mode").get<std::string>();
    const json& manifest = doc.at("manifest");
    r.manifest_path = manifest.value("path", "");
    r.schema_version = manifest.value("schema_version", "1");
    r.single_layer = manifest.value("single_layer", false);
    r.tags = doc.value("tags", std::map<std::string, std::string>{});
    r.config = doc.value("config", json::object());
    for (const auto& s : doc.value("stores", json::array())) {
      StoreInfo info;
      info.role = s.value("role", "");
      info.path = s.value("path", "");
      info.polarity = parse_polarity(s.value("polarity", "larger_is_closer")).value_or(Polarity::kLargerIsCloser);
      info.tag = s.value("tag", "");
      r.stores.push_back(std::move(info));
    }
    for (const auto& m : doc.at("subsets")) r.subsets.push_back(metric_from_json(m));
    if (const auto it = doc.find("assignment"); it != doc.end()) {
      HypothesisAssignment a;
      a.layer1_source = it->value("layer1_source", "rgb") == "rgb" ? HypothesisSource::kRgb : HypothesisSource::kLvp;
      a.layer2_source = a.layer1_source == HypothesisSource::kRgb ? HypothesisSource::kLvp : HypothesisSource::kRgb;
      const std::string method = it->value("method", "rgb_first");
      a.method = method == "calibrated_alpha" ? AssignmentMethod::kCalibratedAlpha
                 : method == "lvp_first"      ? AssignmentMethod::kFixedLvpFirst
                                              : AssignmentMethod::kFixedRgbFirst;
      r.assignment = a;
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaError, fmt::format("malformed report: {}", e.what()));
  }
}

EvalReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open report {}", path.string()));
  try {
    return report_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, fmt::format("{}: {}", path.string(), e.what()));
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string format_percent(double value) {
  if (std::isnan(value)) return "n/a";
  std::string s = fmt::format("{:.1f}", value);
  return s == "-0.0" ? "0.0" : s;
}

namespace {

std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(cells[i]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

std::string to_markdown(const Table& table) {
  std::string out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    out += '|';
    for (const auto& c : cells) out += ' ' + c + " |";
    out += '\n';
  };
  line(table.header);
  out += '|';
  for (std::size_t i = 0; i < table.header.size(); ++i) out += i == 0 ? " :--- |" : " ---: |";
  out += '\n';
  for (const auto& row : table.rows) line(row);
  return out;
}

Table subset_table(const EvalReport& report) {
  Table t;
  const bool paired = report.mode == "ml";
  t.header = {"subset", "n", "SRA(1)", "SRA(2)", "alpha", "tie_rate"};
  if (paired) t.header.push_back("ML-SRA");
  for (const auto& m : report.subsets) {
    std::vector<std::string> row{m.subset,
                                 std::to_string(m.n),
                                 format_percent(m.sra1),
                                 format_percent(m.sra2),
                                 format_percent(m.alpha),
                                 format_percent(m.tie_rate)};
    if (paired) row.push_back(format_percent(m.ml_sra.value_or(std::numeric_limits<double>::quiet_NaN())));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("short write to {}", path.string()));
}

namespace {

const std::string& require_tag(const EvalReport& r, const std::string& key) {
  const auto it = r.tags.find(key);
  if (it == r.tags.end() || it->second.empty()) {
    throw Error(ErrorCode::kTagMissing,
                fmt::format("report for {} has no \"{}\" tag", r.manifest_path.empty() ? "<unknown>" : r.manifest_path, key));
  }
  return it->second;
}

std::string benchmark_of(const EvalReport& r) {
  if (const auto it = r.tags.find("benchmark"); it != r.tags.end() && !it->second.empty()) return it->second;
  const std::string stem = std::filesystem::path(r.manifest_path).stem().string();
  return stem.empty() ? "benchmark" : stem;
}

// Keeps first-seen order while deduplicating.
class OrderedKeys {
 public:
  void add(const std::string& k) {
    if (std::find(keys_.begin(), keys_.end(), k) == keys_.end()) keys_.push_back(k);
  }
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

std::vector<std::string> size_order(const OrderedKeys& seen) {
  std::vector<std::string> out;
  for (const char* canonical : {"S", "B", "L"}) {
    if (std::find(seen.keys().begin(), seen.keys().end(), canonical) != seen.keys().end()) out.emplace_back(canonical);
  }
  for (const auto& k : seen.keys()) {
    if (k != "S" && k != "B" && k != "L") out.push_back(k);
  }
  return out;
}

std::vector<std::string> modality_order(const OrderedKeys& seen) {
  std::vector<std::string> out;
  for (const char* canonical : {"rgb", "lvp"}) {
    if (std::find(seen.keys().begin(), seen.keys().end(), canonical) != seen.keys().end()) out.emplace_back(canonical);
  }
  for (const auto& k : seen.keys()) {
    if (k != "rgb" && k != "lvp") out.push_back(k);
  }
  return out;
}

std::string row_label(const std::string& model, const std::string& size) { return model + "-" + size; }

struct RunKey {
  std::string benchmark, model, size, modality;
  auto operator<=>(const RunKey&) const = default;
};

}  // namespace

Pivots build_pivots(const std::vector<EvalReport>& reports) {
  OrderedKeys models, sizes, benchmarks, modalities;
  std::map<RunKey, const EvalReport*> single;
  std::map<RunKey, const EvalReport*> paired;
  for (const auto& r : reports) {
    const std::string& model = require_tag(r, "model");
    const std::string& size = require_tag(r, "size");
    const bool is_ml = r.mode == "ml";
    const std::string modality = is_ml ? "rgb+lvp" : require_tag(r, "modality");
    RunKey key{benchmark_of(r), model, size, modality};
    auto& bucket = is_ml ? paired : single;
    if (!bucket.emplace(key, &r).second) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("duplicate report for {} {} {} on {}", model, size,
                                                           modality, key.benchmark));
    }
    models.add(model);
    sizes.add(size);
    benchmarks.add(key.benchmark);
    if (!is_ml) modalities.add(modality);
  }
  const auto size_cols = size_order(sizes);
  const auto modality_cols = modality_order(modalities);

  std::vector<std::pair<std::string, std::string>> model_rows;  // (model, size) in display order
  for (const auto& m : models.keys()) {
    for (const auto& s : size_cols) model_rows.emplace_back(m, s);
  }
  const auto present = [](const auto& bucket, const std::string& model, const std::string& size) {
    return std::any_of(bucket.begin(), bucket.end(),
                       [&](const auto& kv) { return kv.first.model == model && kv.first.size == size; });
  };

  Pivots p;

  // SRA by benchmark x subset x modality x layer.
  struct Column {
    RunKey key_template;
    std::string subset;
    int layer;
  };
  std::vector<Column> columns;
  for (const auto& bench : benchmarks.keys()) {
    bool two_layer = false;
    bool any = false;
    for (const auto& [k, r] : single) {
      if (k.benchmark == bench) {
        any = true;
        two_layer = two_layer || !r->single_layer;
      }
    }
    if (!any) continue;
    if (two_layer) {
      for (const char* subset : {"overall", "reverse"}) {
        for (const auto& mod : modality_cols) {
          columns.push_back({{bench, "", "", mod}, subset, 1});
          columns.push_back({{bench, "", "", mod}, subset, 2});
        }
      }
      for (const auto& mod : modality_cols) columns.push_back({{bench, "", "", mod}, "same", 0});
    } else {
      for (const auto& mod : modality_cols) columns.push_back({{bench, "", "", mod}, "overall", 0});
    }
  }
  p.sra_table.header = {"model"};
  for (const auto& c : columns) {
    const std::string layer = c.layer == 0 ? "SRA" : fmt::format("SRA({})", c.layer);
    p.sra_table.header.push_back(fmt::format("{} {} {} {}", c.key_template.benchmark, c.subset, c.key_template.modality, layer));
  }
  for (const auto& [model, size] : model_rows) {
    if (!present(single, model, size)) continue;
    std::vector<std::string> row{row_label(model, size)};
    for (const auto& c : columns) {
      const auto it = single.find({c.key_template.benchmark, model, size, c.key_template.modality});
      const MetricReport* m = it == single.end() ? nullptr : it->second->find(c.subset);
      row.push_back(m ? format_percent(c.layer == 2 ? m->sra2 : m->sra1) : "");
    }
    p.sra_table.rows.push_back(std::move(row));
  }

  // ML-SRA by subset.
  p.ml_sra_table.header = {"model", "benchmark", "overall", "reverse", "same"};
  for (const auto& bench : benchmarks.keys()) {
    for (const auto& [model, size] : model_rows) {
      const auto it = paired.find({bench, model, size, "rgb+lvp"});
      if (it == paired.end()) continue;
      std::vector<std::string> row{row_label(model, size), bench};
      for (const char* subset : {"overall", "reverse", "same"}) {
        const MetricReport* m = it->second->find(subset);
        row.push_back(m && m->ml_sra ? format_percent(*m->ml_sra) : "");
      }
      p.ml_sra_table.rows.push_back(std::move(row));
    }
  }

  const auto scale_header = [&](std::vector<std::string> lead) {
    for (const auto& s : size_cols) lead.push_back(s);
    return lead;
  };

  // Reverse-subset alpha against scale.
  p.alpha_vs_scale.header = scale_header({"benchmark", "model", "modality"});
  for (const auto& bench : benchmarks.keys()) {
    for (const auto& model : models.keys()) {
      for (const auto& mod : modality_cols) {
        std::vector<std::string> row{bench, model, mod};
        bool any = false;
        for (const auto& size : size_cols) {
          const auto it = single.find({bench, model, size, mod});
          const MetricReport* m = it == single.end() || it->second->single_layer ? nullptr : it->second->find("reverse");
          row.push_back(m ? format_percent(m->alpha) : "");
          any = any || m;
        }
        if (any) p.alpha_vs_scale.rows.push_back(std::move(row));
      }
    }
  }

  // Reverse-subset ML-SRA against scale.
  p.ml_sra_vs_scale.header = scale_header({"benchmark", "model"});
  for (const auto& bench : benchmarks.keys()) {
    for (const auto& model : models.keys()) {
      std::vector<std::string> row{bench, model};
      bool any = false;
      for (const auto& size : size_cols) {
        const auto it = paired.find({bench, model, size, "rgb+lvp"});
        const MetricReport* m = it == paired.end() ? nullptr : it->second->find("reverse");
        row.push_back(m && m->ml_sra ? format_percent(*m->ml_sra) : "");
        any = any || (m && m->ml_sra);
      }
      if (any) p.ml_sra_vs_scale.rows.push_back(std::move(row));
    }
  }

  // RGB - LVP gap against scale.
  p.gap_vs_scale.header = scale_header({"benchmark", "subset", "model"});
  for (const auto& bench : benchmarks.keys()) {
    for (const auto& model : models.keys()) {
      std::vector<std::string> row{bench, "", model};
      bool any = false;
      for (const auto& size : size_cols) {
        const auto rgb = single.find({bench, model, size, "rgb"});
        const auto lvp = single.find({bench, model, size, "lvp"});
        if (rgb == single.end() || lvp == single.end()) {
          row.push_back("");
          continue;
        }
        const std::string subset = rgb->second->single_layer ? "overall" : "same";
        const MetricReport* a = rgb->second->find(subset);
        const MetricReport* b = lvp->second->find(subset);
        if (!a || !b) {
          row.push_back("");
          continue;
        }
        row[1] = subset;
        row.push_back(format_percent(sra_gap(*a, *b, Layer::k1)));
        any = true;
      }
      if (any) p.gap_vs_scale.rows.push_back(std::move(row));
    }
  }
  return p;
}

}  // namespace lvp
