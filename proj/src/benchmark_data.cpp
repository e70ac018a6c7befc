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

#include "lvp/benchmark_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "lvp/image_io.hpp"

namespace lvp {

using nlohmann::json;

std::string_view label_name(OrdinalLabel label) {
  return label == OrdinalLabel::kFirstPointNear ? "p1_near" : "p2_near";
}

std::optional<OrdinalLabel> parse_label(std::string_view name) {
  if (name == "p1_near") return OrdinalLabel::kFirstPointNear;
  if (name == "p2_near") return OrdinalLabel::kSecondPointNear;
  return std::nullopt;
}

std::string_view subset_name(Subset subset) {
  switch (subset) {
    case Subset::kOverall: return "overall";
    case Subset::kSame: return "same";
    case Subset::kReverse: return "reverse";
  }
  return "overall";
}

std::optional<Subset> parse_subset(std::string_view name) {
  for (auto s : {Subset::kOverall, Subset::kSame, Subset::kReverse}) {
    if (subset_name(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<const Sample*> BenchmarkManifest::subset(Subset which) const {
  std::vector<const Sample*> out;
  for (const auto& s : samples) {
    if (s.in(which)) out.push_back(&s);
  }
  return out;
}

std::size_t BenchmarkManifest::count(Subset which) const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [which](const Sample& s) { return s.in(which); }));
}

namespace {

[[noreturn]] void schema_error(std::string_view where, std::string_view what) {
  throw Error(ErrorCode::kSchemaError, fmt::format("{}: {}", where, what));
}

const json& require(const json& obj, const char* key, std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, fmt::format("missing field \"{}\"", key));
  return *it;
}

std::string require_string(const json& obj, const char* key, std::string_view where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) schema_error(where, fmt::format("field \"{}\" must be a string", key));
  return v.get<std::string>();
}

Point require_point(const json& obj, const char* key, std::string_view where) {
  const json& v = require(obj, key, where);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    schema_error(where, fmt::format("field \"{}\" must be [x, y] integers", key));
  }
  const auto x = v[0].get<std::int64_t>();
  const auto y = v[1].get<std::int64_t>();
  if (x < 0 || y < 0 || x > INT32_MAX || y > INT32_MAX) {
    throw Error(ErrorCode::kBoundsError, fmt::format("{}: {} = [{}, {}] is outside the image", where, key, x, y));
  }
  return {static_cast<int>(x), static_cast<int>(y)};
}

OrdinalLabel require_label(const json& obj, const char* key, std::string_view where) {
  const std::string text = require_string(obj, key, where);
  const auto label = parse_label(text);
  if (!label) schema_error(where, fmt::format("field \"{}\" must be \"p1_near\" or \"p2_near\", got \"{}\"", key, text));
  return *label;
}

class MaskCache {
 public:
  const Image8& get(const std::filesystem::path& path) {
    auto it = cache_.find(path.string());
    if (it == cache_.end()) {
      Image8 mask = io::read_png8(path);
      require_binary_mask(mask);
      it = cache_.emplace(path.string(), std::move(mask)).first;
    }
    return it->second;
  }

 private:
  std::map<std::string, Image8> cache_;
};

void verify_sample(const Sample& s, const std::filesystem::path& root, MaskCache& masks) {
  const io::PngHeader header = io::read_png_header(root / s.image);
  for (const Point& p : {s.p1, s.p2}) {
    if (p.x >= header.width || p.y >= header.height) {
      throw Error(ErrorCode::kBoundsError, fmt::format("sample {}: point ({}, {}) outside {}x{} image", s.id, p.x,
                                                       p.y, header.width, header.height));
    }
  }
  if (s.mask.empty()) return;
  const Image8& mask = masks.get(root / s.mask);
  if (mask.width() != header.width || mask.height() != header.height) {
    throw Error(ErrorCode::kMaskMismatch, fmt::format("sample {}: mask is {}x{} but image is {}x{}", s.id,
                                                      mask.width(), mask.height(), header.width, header.height));
  }
  for (const Point& p : {s.p1, s.p2}) {
    if (mask(p.x, p.y) == 0) {
      throw Error(ErrorCode::kMaskMismatch,
                  fmt::format("sample {}: point ({}, {}) lies outside the ambiguous region", s.id, p.x, p.y));
    }
  }
}

const std::set<std::string>& allowed_keys(bool single_layer) {
  static const std::set<std::string> two{"id", "image", "mask", "p1", "p2", "layer1", "layer2"};
  static const std::set<std::string> one{"id", "image", "mask", "p1", "p2", "layer1"};
  return single_layer ? one : two;
}

}  // namespace

BenchmarkManifest parse_manifest(const json& doc, const std::filesystem::path& root, const ManifestOptions& options) {
  if (!doc.is_object()) schema_error("manifest", "top level must be an object");
  BenchmarkManifest manifest;
  manifest.single_layer = options.single_layer;
  manifest.schema_version = require_string(doc, "schema_version", "manifest");
  if (manifest.schema_version != "1") {
    schema_error("manifest", fmt::format("unsupported schema_version \"{}\"", manifest.schema_version));
  }
  const json& samples = require(doc, "samples", "manifest");
  if (!samples.is_array()) schema_error("manifest", "\"samples\" must be an array");
  for (const auto& [key, _] : doc.items()) {
    if (key != "schema_version" && key != "samples") schema_error("manifest", fmt::format("unknown field \"{}\"", key));
  }

  std::unordered_set<std::string> seen;
  manifest.samples.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const json& entry = samples[i];
    std::string where = fmt::format("samples[{}]", i);
    if (!entry.is_object()) schema_error(where, "must be an object");
    for (const auto& [key, _] : entry.items()) {
      if (!allowed_keys(options.single_layer).contains(key)) schema_error(where, fmt::format("unknown field \"{}\"", key));
    }
    Sample s;
    s.id = require_string(entry, "id", where);
    if (s.id.empty()) schema_error(where, "empty id");
    where = fmt::format("sample {}", s.id);
    s.image = require_string(entry, "image", where);
    if (options.single_layer) {
      if (entry.contains("mask")) s.mask = require_string(entry, "mask", where);
    } else {
      s.mask = require_string(entry, "mask", where);
    }
    s.p1 = require_point(entry, "p1", where);
    s.p2 = require_point(entry, "p2", where);
    s.layer1 = require_label(entry, "layer1", where);
    s.layer2 = options.single_layer ? s.layer1 : require_label(entry, "layer2", where);
    if (s.p1 == s.p2) {
      throw Error(ErrorCode::kBoundsError, fmt::format("{}: p1 and p2 are the same pixel", where));
    }
    if (!seen.insert(s.id).second) throw Error(ErrorCode::kDuplicateId, fmt::format("duplicate id \"{}\"", s.id));
    manifest.samples.push_back(std::move(s));
  }

  if (options.verify_rasters) {
    MaskCache masks;
    for (const auto& s : manifest.samples) verify_sample(s, root, masks);
  }
  return manifest;
}

BenchmarkManifest load_manifest(const std::filesystem::path& path, const ManifestOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open manifest {}", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, fmt::format("{}: {}", path.string(), e.what()));
  }
  const auto root = options.root.value_or(path.parent_path());
  return parse_manifest(doc, root, options);
}

json manifest_to_json(const BenchmarkManifest& manifest) {
  json samples = json::array();
  for (const auto& s : manifest.samples) {
    json entry{{"id", s.id},
               {"image", s.image},
               {"p1", {s.p1.x, s.p1.y}},
               {"p2", {s.p2.x, s.p2.y}},
               {"layer1", label_name(s.layer1)}};
    if (!s.mask.empty()) entry["mask"] = s.mask;
    if (!manifest.single_layer) entry["layer2"] = label_name(s.layer2);
    samples.push_back(std::move(entry));
  }
  return json{{"schema_version", manifest.schema_version}, {"samples", std::move(samples)}};
}

std::string serialize_manifest(const BenchmarkManifest& manifest) {
  return manifest_to_json(manifest).dump(2) + "\n";
}

void require_binary_mask(const Image8& mask) {
  if (mask.channels() != 1) {
    throw Error(ErrorCode::kWrongChannelCount, fmt::format("mask has {} channels; expected 1", mask.channels()));
  }
  const auto s = mask.samples();
  const auto bad = std::find_if(s.begin(), s.end(), [](std::uint8_t v) { return v != 0 && v != 255; });
  if (bad != s.end()) {
    throw Error(ErrorCode::kNonBinaryMask, fmt::format("mask sample value {} is neither 0 nor 255", int{*bad}));
  }
}

double ambiguity_ratio(const Image8& mask) {
  require_binary_mask(mask);
  if (mask.pixel_count() == 0) return 0.0;
  const auto s = mask.samples();
  const auto set = std::count_if(s.begin(), s.end(), [](std::uint8_t v) { return v != 0; });
  return static_cast<double>(set) / static_cast<double>(mask.pixel_count());
}

namespace {

struct Overlap {
  int cell;
  std::int64_t length;
};

// Pixel p spans [p*grid, (p+1)*grid) and cell i spans [i*len, (i+1)*len) in
// units of 1/grid pixel, so overlaps are exact integers.
std::vector<std::vector<Overlap>> axis_overlaps(int len, int grid) {
  std::vector<std::vector<Overlap>> out(static_cast<std::size_t>(len));
  for (int p = 0; p < len; ++p) {
    const std::int64_t lo = std::int64_t{p} * grid;
    const std::int64_t hi = lo + grid;
    for (auto cell = static_cast<int>(lo / len); cell < grid; ++cell) {
      const std::int64_t clo = std::int64_t{cell} * len;
      const std::int64_t chi = clo + len;
      if (clo >= hi) break;
      const std::int64_t o = std::min(hi, chi) - std::max(lo, clo);
      if (o > 0) out[p].push_back({cell, o});
    }
  }
  return out;
}

void accumulate_mask(const Image8& mask, int grid, Grid<double>& acc) {
  require_binary_mask(mask);
  if (mask.pixel_count() == 0) return;
  const auto ox = axis_overlaps(mask.width(), grid);
  const auto oy = axis_overlaps(mask.height(), grid);
  Grid<std::int64_t> sums(grid, grid, 1);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask(x, y) == 0) continue;
      for (const auto& wy : oy[y]) {
        for (const auto& wx : ox[x]) sums(wx.cell, wy.cell) += wy.length * wx.length;
      }
    }
  }
  const double cell_area = static_cast<double>(mask.width()) * static_cast<double>(mask.height());
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) acc(j, i) += static_cast<double>(sums(j, i)) / cell_area;
  }
}

void normalize_by_max(Grid<double>& acc) {
  double peak = 0.0;
  for (double v : acc.samples()) peak = std::max(peak, v);
  if (peak <= 0.0) return;
  for (double& v : acc.samples()) v /= peak;
}

}  // namespace

Grid<double> spatial_heatmap(const std::vector<Image8>& masks, int grid) {
  if (grid < 1) throw Error(ErrorCode::kInvalidArgument, "heatmap grid must be >= 1");
  Grid<double> acc(grid, grid, 1, 0.0);
  for (const auto& m : masks) accumulate_mask(m, grid, acc);
  normalize_by_max(acc);
  return acc;
}

Grid<double> spatial_heatmap(const BenchmarkManifest& manifest, const std::filesystem::path& root, int grid,
                             const MaskLoader& load_mask) {
  if (grid < 1) throw Error(ErrorCode::kInvalidArgument, "heatmap grid must be >= 1");
  Grid<double> acc(grid, grid, 1, 0.0);
  std::map<std::string, Image8> cache;
  for (const auto& s : manifest.samples) {
    if (s.mask.empty()) continue;
    auto it = cache.find(s.mask);
    if (it == cache.end()) it = cache.emplace(s.mask, load_mask(root / s.mask)).first;
    accumulate_mask(it->second, grid, acc);
  }
  normalize_by_max(acc);
  return acc;
}

std::vector<HistogramBin> histogram(const std::vector<double>& ratios, int bins) {
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "histogram needs at least one bin");
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    out[i].lo = static_cast<double>(i) / bins;
    out[i].hi = static_cast<double>(i + 1) / bins;
  }
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("ratio {} outside [0, 1]", r));
    }
    const int bin = std::min(static_cast<int>(std::floor(r * bins)), bins - 1);
    ++out[bin].count;
  }
  return out;
}

}  // namespace lvp
