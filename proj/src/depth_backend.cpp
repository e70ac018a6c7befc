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

#include "lvp/depth_backend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include <fmt/format.h>

#include "lvp/image_io.hpp"

namespace lvp {

namespace {
constexpr std::string_view kIdToken = "<sample_id>";
}

std::string_view polarity_name(Polarity p) {
  return p == Polarity::kLargerIsCloser ? "larger_is_closer" : "larger_is_farther";
}

std::optional<Polarity> parse_polarity(std::string_view name) {
  if (name == "larger_is_closer") return Polarity::kLargerIsCloser;
  if (name == "larger_is_farther") return Polarity::kLargerIsFarther;
  return std::nullopt;
}

std::string_view ordering_name(Ordering o) {
  switch (o) {
    case Ordering::kP1Near: return "p1_near";
    case Ordering::kP2Near: return "p2_near";
    case Ordering::kTie: return "tie";
  }
  return "tie";
}

std::filesystem::path PredictionStore::path_for(std::string_view sample_id) const {
  std::string name = naming;
  const auto pos = name.find(kIdToken);
  if (pos != std::string::npos) name.replace(pos, kIdToken.size(), sample_id);
  return root / name;
}

bool PredictionStore::has(std::string_view sample_id) const {
  std::error_code ec;
  return std::filesystem::is_regular_file(path_for(sample_id), ec);
}

PredictionStore open_store(const std::filesystem::path& root) {
  const auto meta_path = root / kStoreMetadataFile;
  std::ifstream in(meta_path);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open {}", meta_path.string()));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, fmt::format("{}: {}", meta_path.string(), e.what()));
  }
  if (!doc.is_object()) throw Error(ErrorCode::kSchemaError, fmt::format("{}: expected an object", meta_path.string()));

  PredictionStore store;
  store.root = root;
  const auto pol = doc.find("polarity");
  if (pol == doc.end() || !pol->is_string() || !parse_polarity(pol->get<std::string>())) {
    throw Error(ErrorCode::kSchemaError,
                fmt::format("{}: \"polarity\" must be larger_is_closer or larger_is_farther", meta_path.string()));
  }
  store.polarity = *parse_polarity(pol->get<std::string>());
  if (const auto naming = doc.find("naming"); naming != doc.end()) {
    if (!naming->is_string() || naming->get<std::string>().find(kIdToken) == std::string::npos) {
      throw Error(ErrorCode::kSchemaError,
                  fmt::format("{}: \"naming\" must be a string containing <sample_id>", meta_path.string()));
    }
    store.naming = naming->get<std::string>();
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "polarity" && key != "naming") store.metadata[key] = value;
  }
  return store;
}

void write_store_metadata(const PredictionStore& store) {
  nlohmann::json doc = store.metadata;
  doc["polarity"] = polarity_name(store.polarity);
  doc["naming"] = store.naming;
  std::filesystem::create_directories(store.root);
  const auto path = store.root / kStoreMetadataFile;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot write {}", path.string()));
  out << doc.dump(2) << "\n";
}

DepthPrediction load_depth(const PredictionStore& store, std::string_view sample_id) {
  const auto path = store.path_for(sample_id);
  if (!store.has(sample_id)) throw MissingPredictionError({std::string(sample_id)});

  DepthPrediction pred;
  pred.polarity = store.polarity;
  pred.source_tag = store.metadata.value("tag", store.root.filename().string());
  const auto ext = path.extension().string();
  if (ext == ".pfm") {
    pred.field = io::read_pfm(path);
    if (pred.field.channels() != 1) {
      throw Error(ErrorCode::kFormatError, fmt::format("{}: depth PFM must be single-channel (Pf)", path.string()));
    }
  } else if (ext == ".png") {
    const Image16 raw = io::read_png16(path);
    std::vector<float> samples(raw.samples().size());
    std::transform(raw.samples().begin(), raw.samples().end(), samples.begin(),
                   [](std::uint16_t v) { return static_cast<float>(static_cast<double>(v) / 65535.0); });
    pred.field = ImageF(raw.width(), raw.height(), 1, std::move(samples));
  } else {
    throw Error(ErrorCode::kFormatError, fmt::format("{}: unsupported depth format \"{}\"", path.string(), ext));
  }
  const auto s = pred.field.samples();
  if (!std::all_of(s.begin(), s.end(), [](float v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::kNonFiniteDepth, fmt::format("{}: NaN or Inf depth", path.string()));
  }
  return pred;
}

void write_depth(const PredictionStore& store, std::string_view sample_id, const ImageF& field) {
  const auto path = store.path_for(sample_id);
  std::filesystem::create_directories(path.parent_path());
  if (path.extension() == ".pfm") {
    io::write_pfm(path, field);
    return;
  }
  if (path.extension() == ".png") {
    std::vector<std::uint16_t> raw(field.samples().size());
    std::transform(field.samples().begin(), field.samples().end(), raw.begin(), [](float v) {
      return static_cast<std::uint16_t>(std::clamp(std::lround(static_cast<double>(v) * 65535.0), 0L, 65535L));
    });
    io::write_png16(path, Image16(field.width(), field.height(), 1, std::move(raw)));
    return;
  }
  throw Error(ErrorCode::kFormatError, fmt::format("{}: unsupported depth format", path.string()));
}

namespace {

float lookup(const ImageF& f, Point p, int window) {
  if (window <= 1) return f(p.x, p.y);
  const int r = window / 2;
  std::vector<float> values;
  values.reserve(static_cast<std::size_t>(window) * window);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) values.push_back(f.clamped(p.x + dx, p.y + dy));
  }
  auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

}  // namespace

Ordering sample_ordering(const DepthPrediction& pred, Point p1, Point p2, int window) {
  if (window < 1 || window % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("median window must be odd and >= 1, got {}", window));
  }
  for (const Point& p : {p1, p2}) {
    if (!pred.field.contains(p.x, p.y)) {
      throw Error(ErrorCode::kBoundsError, fmt::format("point ({}, {}) outside {}x{} depth field", p.x, p.y,
                                                       pred.field.width(), pred.field.height()));
    }
  }
  const float v1 = lookup(pred.field, p1, window);
  const float v2 = lookup(pred.field, p2, window);
  if (v1 == v2) return Ordering::kTie;
  const bool p1_larger = v1 > v2;
  const bool p1_near = pred.polarity == Polarity::kLargerIsCloser ? p1_larger : !p1_larger;
  return p1_near ? Ordering::kP1Near : Ordering::kP2Near;
}

}  // namespace lvp
