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

#include "lvp/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "lvp/benchmark_data.hpp"
#include "lvp/depth_backend.hpp"
#include "lvp/image_io.hpp"
#include "lvp/metrics.hpp"
#include "lvp/multi_hypothesis.hpp"
#include "lvp/parallel.hpp"
#include "lvp/report.hpp"
#include "lvp/semantic_baseline.hpp"
#include "lvp/spectral_prompt.hpp"
#include "lvp/version.hpp"

namespace lvp::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void configure_logging() {
  static std::once_flag once;
  std::call_once(once, [] {
    auto logger = spdlog::stderr_logger_mt("lvpbench");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
  });
  const char* env = std::getenv("LVP_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

struct Common {
  std::string root = ".";
  int jobs = 0;

  fs::path resolve(const std::string& p) const {
    const fs::path path(p);
    return path.is_absolute() ? path : fs::path(root) / path;
  }
};

struct Tags {
  std::string model, size, modality, benchmark;

  void add_options(CLI::App* cmd, bool with_modality) {
    cmd->add_option("--model", model, "Model family tag (e.g. DAv2)");
    cmd->add_option("--size", size, "Model size tag (e.g. S, B, L)");
    if (with_modality) cmd->add_option("--modality", modality, "Input modality tag (rgb, lvp, ...)");
    cmd->add_option("--benchmark", benchmark, "Benchmark tag; defaults to the manifest file stem");
  }
  std::map<std::string, std::string> to_map() const {
    std::map<std::string, std::string> m;
    if (!model.empty()) m["model"] = model;
    if (!size.empty()) m["size"] = size;
    if (!modality.empty()) m["modality"] = modality;
    if (!benchmark.empty()) m["benchmark"] = benchmark;
    return m;
  }
};

void emit_report(const EvalReport& report, const fs::path& out_dir, const std::string& name, std::ostream& out) {
  const Table table = subset_table(report);
  write_text(out_dir / (name + ".json"), to_json(report).dump(2) + "\n");
  write_text(out_dir / (name + ".csv"), to_csv(table));
  std::string md = fmt::format("# {} ({})\n\nconfig hash `{}`\n\n", name, report.mode, report.config_hash());
  md += to_markdown(table);
  write_text(out_dir / (name + ".md"), md);
  out << to_markdown(table);
}

StoreInfo describe(const std::string& role, const std::string& given, const PredictionStore& store) {
  return {role, given, store.polarity, store.metadata.value("tag", fs::path(given).filename().string())};
}

// ---------------------------------------------------------------- transform

struct TransformArgs {
  std::vector<std::string> inputs;
  std::string out_dir;
  std::string variant = "lvp";
  std::string clamp = "saturate";
  bool dump_float = false;
};

std::vector<fs::path> expand_inputs(const Common& common, const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p = common.resolve(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

int cmd_transform(const Common& common, const TransformArgs& args, std::ostream& out, std::ostream& err) {
  const auto kind = parse_variant(args.variant);
  const auto clamp = parse_clamp_mode(args.clamp);
  if (!kind || !clamp) {
    err << "error: unknown variant or clamp mode\n";
    return kValidationError;
  }
  const LaplacianVariant variant{*kind, *clamp};
  const fs::path out_dir = common.resolve(args.out_dir);
  fs::create_directories(out_dir);

  const auto files = expand_inputs(common, args.inputs);
  std::vector<std::string> failures(files.size());
  std::vector<int> statuses(files.size(), kOk);
  parallel_for(files.size(), common.jobs, [&](std::size_t i) {
    const fs::path& file = files[i];
    try {
      const Image8 image = io::read_png8(file);
      const SignedField field = convolve_laplacian(image, variant.kind);
      const fs::path stem = out_dir / file.stem();
      io::write_png8(fs::path(stem).concat(".png"), to_prompt(field, variant.clamp_mode));
      if (args.dump_float) io::write_pfm(fs::path(stem).concat(".pfm"), field);
      const auto k = laplacian_kernel(variant.kind);
      const json sidecar{{"source", file.filename().string()},
                         {"variant", variant_name(variant.kind)},
                         {"kernel", std::vector<int>(k.begin(), k.end())},
                         {"clamp", clamp_mode_name(variant.clamp_mode)},
                         {"padding", "replicate"},
                         {"width", field.width()},
                         {"height", field.height()},
                         {"channels", field.channels()},
                         {"toolkit", {{"name", kToolkitName}, {"version", kToolkitVersion}}}};
      write_text(fs::path(stem).concat(".json"), sidecar.dump(2) + "\n");
    } catch (const Error& e) {
      failures[i] = e.what();
      statuses[i] = exit_status(e.code());
    } catch (const std::exception& e) {
      failures[i] = e.what();
      statuses[i] = kInternalError;
    }
  });

  int status = kOk;
  std::size_t written = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (statuses[i] == kOk) {
      ++written;
      continue;
    }
    err << "error: " << files[i].string() << ": " << failures[i] << "\n";
    status = std::max(status, statuses[i]);
  }
  out << fmt::format("transformed {} of {} image(s) with {} / {}\n", written, files.size(), variant_name(variant.kind),
                     clamp_mode_name(variant.clamp_mode));
  return status;
}

// --------------------------------------------------------------------- eval

struct EvalArgs {
  std::string manifest;
  std::string store;
  std::string out_dir;
  std::string name = "eval";
  bool single_layer = false;
  bool no_raster_check = false;
  int median_window = 1;
  Tags tags;
};

BenchmarkManifest load_for_eval(const Common& common, const std::string& path, bool single_layer, bool check) {
  ManifestOptions opts;
  opts.single_layer = single_layer;
  opts.verify_rasters = !check;
  const fs::path resolved = common.resolve(path);
  opts.root = resolved.parent_path();
  return load_manifest(resolved, opts);
}

int cmd_eval(const Common& common, const EvalArgs& args, std::ostream& out) {
  const BenchmarkManifest manifest = load_for_eval(common, args.manifest, args.single_layer, args.no_raster_check);
  const PredictionStore store = open_store(common.resolve(args.store));
  spdlog::info("evaluating {} samples from {}", manifest.samples.size(), args.store);
  const OrderingTable table = collect_orderings(manifest, store, {common.jobs, args.median_window});

  EvalReport report;
  report.mode = "single";
  report.manifest_path = args.manifest;
  report.schema_version = manifest.schema_version;
  report.single_layer = manifest.single_layer;
  report.tags = args.tags.to_map();
  report.config = {{"median_window", args.median_window}, {"raster_check", !args.no_raster_check}, {"tie_rule", "incorrect"}};
  report.stores.push_back(describe("predictions", args.store, store));
  if (manifest.single_layer) {
    report.subsets.push_back(evaluate_store(manifest, Subset::kOverall, table));
  } else {
    for (auto subset : {Subset::kOverall, Subset::kSame, Subset::kReverse}) {
      report.subsets.push_back(evaluate_store(manifest, subset, table));
    }
  }
  emit_report(report, common.resolve(args.out_dir), args.name, out);
  return kOk;
}

// ------------------------------------------------------------------ eval-ml

struct EvalMlArgs {
  std::string manifest;
  std::string rgb_store;
  std::string lvp_store;
  std::string out_dir;
  std::string name = "eval_ml";
  std::string assign = "alpha";
  std::string calib_subset = "overall";
  std::optional<double> calib_split;
  bool no_raster_check = false;
  int median_window = 1;
  Tags tags;
};

BenchmarkManifest restrict_to(const BenchmarkManifest& m, Subset subset) {
  BenchmarkManifest out;
  out.schema_version = m.schema_version;
  out.single_layer = m.single_layer;
  for (const auto& s : m.samples) {
    if (s.in(subset)) out.samples.push_back(s);
  }
  return out;
}

int cmd_eval_ml(const Common& common, const EvalMlArgs& args, std::ostream& out) {
  const BenchmarkManifest manifest = load_for_eval(common, args.manifest, false, args.no_raster_check);
  const PredictionStore rgb_store = open_store(common.resolve(args.rgb_store));
  const PredictionStore lvp_store = open_store(common.resolve(args.lvp_store));
  const EvalOptions options{common.jobs, args.median_window};
  const OrderingTable rgb = collect_orderings(manifest, rgb_store, options);
  const OrderingTable lvp = collect_orderings(manifest, lvp_store, options);
  const auto calib_subset = parse_subset(args.calib_subset);
  if (!calib_subset) throw Error(ErrorCode::kInvalidArgument, "unknown --calib-subset " + args.calib_subset);

  BenchmarkManifest evaluation = manifest;
  HypothesisAssignment assignment;
  if (args.assign == "alpha") {
    if (args.calib_split) {
      CalibrationSplit split = split_for_calibration(manifest, *args.calib_split);
      assignment = assign_by_alpha(restrict_to(split.calibration, *calib_subset), rgb, lvp);
      assignment.calib_mode = fmt::format("split:{}", *args.calib_split);
      evaluation = std::move(split.evaluation);
    } else {
      assignment = assign_by_alpha(restrict_to(manifest, *calib_subset), rgb, lvp);
    }
    if (assignment.defaulted) spdlog::warn("both calibration alphas are zero; defaulting to RGB on layer 1");
  } else if (args.assign == "rgb-first") {
    assignment = HypothesisAssignment::fixed(AssignmentMethod::kFixedRgbFirst);
  } else if (args.assign == "lvp-first") {
    assignment = HypothesisAssignment::fixed(AssignmentMethod::kFixedLvpFirst);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown --assign " + args.assign);
  }

  const CombinedResult combined = combine(evaluation, assignment, rgb, lvp);

  EvalReport report;
  report.mode = "ml";
  report.manifest_path = args.manifest;
  report.schema_version = manifest.schema_version;
  report.tags = args.tags.to_map();
  report.tags["modality"] = "rgb+lvp";
  report.config = {{"median_window", args.median_window},
                   {"raster_check", !args.no_raster_check},
                   {"tie_rule", "incorrect"},
                   {"assign", args.assign},
                   {"calib_subset", args.calib_subset},
                   {"calib_split", args.calib_split ? json(*args.calib_split) : json()}};
  report.stores.push_back(describe("rgb", args.rgb_store, rgb_store));
  report.stores.push_back(describe("lvp", args.lvp_store, lvp_store));
  report.subsets = combined.reports;
  report.assignment = combined.assignment;

  const fs::path out_dir = common.resolve(args.out_dir);
  emit_report(report, out_dir, args.name, out);

  Table table_a{{"method", "overall", "reverse", "same"}, {}};
  std::vector<std::string> row{fmt::format("{}->1 {}->2", source_name(assignment.layer1_source),
                                           source_name(assignment.layer2_source))};
  for (const char* subset : {"overall", "reverse", "same"}) {
    const auto it = std::find_if(combined.reports.begin(), combined.reports.end(),
                                 [&](const MetricReport& r) { return r.subset == subset; });
    row.push_back(format_percent(it->ml_sra.value_or(0.0)));
  }
  table_a.rows.push_back(std::move(row));
  write_text(out_dir / (args.name + "_ml_sra.csv"), to_csv(table_a));
  write_text(out_dir / (args.name + "_ml_sra.md"), to_markdown(table_a));

  Table pairs{{"id", "layer1_prediction", "layer2_prediction", "both_correct"}, {}};
  for (const auto& p : combined.pairs) {
    pairs.rows.push_back({p.id, std::string(ordering_name(p.layer1)), std::string(ordering_name(p.layer2)),
                          p.both_correct ? "1" : "0"});
  }
  write_text(out_dir / (args.name + "_pairs.csv"), to_csv(pairs));
  return kOk;
}

// -------------------------------------------------------------------- stats

struct StatsArgs {
  std::string manifest;
  std::string out_dir;
  int bins = 10;
  int grid = 32;
  bool single_layer = false;
};

int cmd_stats(const Common& common, const StatsArgs& args, std::ostream& out) {
  const fs::path manifest_path = common.resolve(args.manifest);
  ManifestOptions opts;
  opts.single_layer = args.single_layer;
  opts.root = manifest_path.parent_path();
  const BenchmarkManifest manifest = load_manifest(manifest_path, opts);
  const fs::path root = *opts.root;

  std::vector<const Sample*> with_mask;
  for (const auto& s : manifest.samples) {
    if (!s.mask.empty()) with_mask.push_back(&s);
  }
  std::vector<double> ratios(with_mask.size());
  parallel_for(with_mask.size(), common.jobs,
               [&](std::size_t i) { ratios[i] = ambiguity_ratio(io::read_png8(root / with_mask[i]->mask)); });

  const fs::path out_dir = common.resolve(args.out_dir);
  Table ratio_table{{"id", "ratio"}, {}};
  for (std::size_t i = 0; i < with_mask.size(); ++i) {
    ratio_table.rows.push_back({with_mask[i]->id, fmt::format("{:.6f}", ratios[i])});
  }
  write_text(out_dir / "ratios.csv", to_csv(ratio_table));

  Table hist_table{{"bin_lo", "bin_hi", "count"}, {}};
  for (const auto& b : histogram(ratios, args.bins)) {
    hist_table.rows.push_back({fmt::format("{:.6f}", b.lo), fmt::format("{:.6f}", b.hi), std::to_string(b.count)});
  }
  write_text(out_dir / "histogram.csv", to_csv(hist_table));

  const Grid<double> heat = spatial_heatmap(manifest, root, args.grid, [](const fs::path& p) { return io::read_png8(p); });
  std::string heat_csv;
  for (int y = 0; y < heat.height(); ++y) {
    for (int x = 0; x < heat.width(); ++x) heat_csv += fmt::format("{}{:.6f}", x ? "," : "", heat(x, y));
    heat_csv += '\n';
  }
  write_text(out_dir / "heatmap.csv", heat_csv);
  out << fmt::format("{} masks, {} bins, {}x{} heatmap -> {}\n", ratios.size(), args.bins, args.grid, args.grid,
                     out_dir.string());
  return kOk;
}

// ---------------------------------------------------------- baseline interp

struct BaselineArgs {
  std::string manifest;
  std::string store;
  std::string out_dir;
  std::string pred_masks;
  std::string mask_naming = "<sample_id>.png";
  double tolerance = 1e-5;
  int max_iters = 10000;
};

int cmd_baseline_interp(const Common& common, const BaselineArgs& args, std::ostream& out) {
  const fs::path manifest_path = common.resolve(args.manifest);
  ManifestOptions opts;
  opts.root = manifest_path.parent_path();
  const BenchmarkManifest manifest = load_manifest(manifest_path, opts);
  const PredictionStore source = open_store(common.resolve(args.store));

  PredictionStore target;
  target.root = common.resolve(args.out_dir);
  target.naming = "<sample_id>.pfm";
  target.polarity = source.polarity;
  target.metadata = {{"tag", "harmonic_fill"},
                     {"source_store", args.store},
                     {"mask_source", args.pred_masks.empty() ? "manifest" : "predicted"},
                     {"tolerance", args.tolerance},
                     {"max_iters", args.max_iters}};
  write_store_metadata(target);

  const auto& samples = manifest.samples;
  std::vector<json> rows(samples.size());
  std::vector<std::optional<double>> ious(samples.size());
  std::vector<char> missing(samples.size(), 0);
  parallel_for(samples.size(), common.jobs, [&](std::size_t i) {
    const Sample& s = samples[i];
    if (!source.has(s.id)) {
      missing[i] = 1;
      return;
    }
    const Image8 gt = io::read_png8(*opts.root / s.mask);
    Image8 mask = gt;
    if (!args.pred_masks.empty()) {
      std::string name = args.mask_naming;
      if (const auto pos = name.find("<sample_id>"); pos != std::string::npos) name.replace(pos, 11, s.id);
      mask = io::read_png8(common.resolve(args.pred_masks) / name);
      ious[i] = mask_iou(mask, gt);
    }
    const FillResult fill = harmonic_fill(load_depth(source, s.id), mask, {args.tolerance, args.max_iters});
    write_depth(target, s.id, fill.depth.field);
    rows[i] = {{"id", s.id},
               {"converged", fill.converged},
               {"iterations", fill.iterations},
               {"filled_pixels", fill.filled_pixels},
               {"max_update", fill.max_update}};
    if (ious[i]) rows[i]["iou"] = *ious[i];
  });
  std::vector<std::string> missing_ids;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (missing[i]) missing_ids.push_back(samples[i].id);
  }
  if (!missing_ids.empty()) throw MissingPredictionError(std::move(missing_ids));

  std::size_t unconverged = 0;
  double iou_sum = 0.0;
  std::size_t iou_n = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    unconverged += rows[i]["converged"].get<bool>() ? 0 : 1;
    if (ious[i]) {
      iou_sum += *ious[i];
      ++iou_n;
    }
  }
  json summary{{"samples", rows}, {"unconverged", unconverged}, {"store", args.out_dir}};
  if (iou_n) summary["mean_iou"] = iou_sum / static_cast<double>(iou_n);
  write_text(target.root / "baseline_summary.json", summary.dump(2) + "\n");
  out << fmt::format("filled {} sample(s), {} not converged", samples.size(), unconverged);
  if (iou_n) out << fmt::format(", mean IoU {:.4f}", iou_sum / static_cast<double>(iou_n));
  out << "\n";
  if (unconverged) spdlog::warn("{} fill(s) hit max_iters before converging", unconverged);
  return kOk;
}

// ------------------------------------------------------------------- report

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string out_dir;
};

int cmd_report(const Common& common, const ReportArgs& args, std::ostream& out) {
  std::vector<EvalReport> reports;
  for (const auto& in : args.inputs) reports.push_back(read_report(common.resolve(in)));
  const Pivots pivots = build_pivots(reports);
  const fs::path out_dir = common.resolve(args.out_dir);
  const std::pair<const char*, const Table*> outputs[] = {{"sra_table", &pivots.sra_table},
                                                          {"ml_sra_table", &pivots.ml_sra_table},
                                                          {"alpha_vs_scale", &pivots.alpha_vs_scale},
                                                          {"ml_sra_vs_scale", &pivots.ml_sra_vs_scale},
                                                          {"gap_vs_scale", &pivots.gap_vs_scale}};
  for (const auto& [name, table] : outputs) {
    write_text(out_dir / fmt::format("{}.csv", name), to_csv(*table));
    write_text(out_dir / fmt::format("{}.md", name), to_markdown(*table));
    out << fmt::format("{}: {} row(s)\n", name, table->rows.size());
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_logging();

  CLI::App app{"Multi-layer ordinal depth benchmark toolkit", std::string(kToolkitName)};
  app.set_version_flag("--version", std::string(kToolkitVersion));
  app.require_subcommand(1);
  Common common;
  app.add_option("--root", common.root, "Base directory for relative paths");
  app.add_option("--jobs", common.jobs, "Worker threads (0 = logical cores)")->check(CLI::NonNegativeNumber);

  TransformArgs transform;
  auto* t = app.add_subcommand("transform", "Write Laplacian prompt images");
  t->add_option("inputs", transform.inputs, "PNG files or directories")->required();
  t->add_option("-o,--out", transform.out_dir, "Output directory")->required();
  t->add_option("--variant", transform.variant, "lvp | lvp2 | lvpr | lvpg")
      ->check(CLI::IsMember({"lvp", "lvp2", "lvpr", "lvpg"}));
  t->add_option("--clamp", transform.clamp, "saturate | normabs")->check(CLI::IsMember({"saturate", "normabs"}));
  t->add_flag("--dump-float", transform.dump_float, "Also write the signed response as PFM");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Score one prediction store (SRA, alpha)");
  e->add_option("--manifest", eval.manifest, "Benchmark manifest JSON")->required();
  e->add_option("--store", eval.store, "Prediction store directory")->required();
  e->add_option("-o,--out", eval.out_dir, "Report directory")->required();
  e->add_option("--name", eval.name, "Report file stem");
  e->add_flag("--single-layer", eval.single_layer, "Manifest uses the single-layer schema");
  e->add_flag("--no-raster-check", eval.no_raster_check, "Skip image/mask verification at load");
  e->add_option("--median-window", eval.median_window, "Odd k for k x k median point sampling")->check(CLI::PositiveNumber);
  eval.tags.add_options(e, true);

  EvalMlArgs ml;
  auto* m = app.add_subcommand("eval-ml", "Score an RGB + LVP hypothesis pair (ML-SRA)");
  m->add_option("--manifest", ml.manifest, "Benchmark manifest JSON")->required();
  m->add_option("--rgb-store", ml.rgb_store, "Store of RGB-input predictions")->required();
  m->add_option("--lvp-store", ml.lvp_store, "Store of LVP-input predictions")->required();
  m->add_option("-o,--out", ml.out_dir, "Report directory")->required();
  m->add_option("--name", ml.name, "Report file stem");
  m->add_option("--assign", ml.assign, "alpha | rgb-first | lvp-first")
      ->check(CLI::IsMember({"alpha", "rgb-first", "lvp-first"}));
  m->add_option("--calib-subset", ml.calib_subset, "overall | same | reverse")
      ->check(CLI::IsMember({"overall", "same", "reverse"}));
  m->add_option("--calib-split", ml.calib_split, "Held-out calibration fraction in (0, 1)")
      ->check(CLI::Range(0.0, 1.0));
  m->add_flag("--no-raster-check", ml.no_raster_check, "Skip image/mask verification at load");
  m->add_option("--median-window", ml.median_window, "Odd k for k x k median point sampling")->check(CLI::PositiveNumber);
  ml.tags.add_options(m, false);

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Ambiguous-region ratio histogram and spatial heatmap");
  s->add_option("--manifest", stats.manifest, "Benchmark manifest JSON")->required();
  s->add_option("-o,--out", stats.out_dir, "Output directory")->required();
  s->add_option("--bins", stats.bins, "Histogram bins")->check(CLI::PositiveNumber);
  s->add_option("--grid", stats.grid, "Heatmap grid size")->check(CLI::PositiveNumber);
  s->add_flag("--single-layer", stats.single_layer, "Manifest uses the single-layer schema");

  BaselineArgs baseline;
  auto* b = app.add_subcommand("baseline", "Mask-guided baselines");
  b->require_subcommand(1);
  auto* bi = b->add_subcommand("interp", "Harmonic fill of masked regions from the boundary depth");
  bi->add_option("--manifest", baseline.manifest, "Benchmark manifest JSON")->required();
  bi->add_option("--store", baseline.store, "Source prediction store")->required();
  bi->add_option("-o,--out", baseline.out_dir, "Output store directory")->required();
  bi->add_option("--pred-masks", baseline.pred_masks, "Directory of predicted masks (default: manifest masks)");
  bi->add_option("--mask-naming", baseline.mask_naming, "Predicted mask file pattern");
  bi->add_option("--tol", baseline.tolerance, "Stopping tolerance relative to dynamic range")->check(CLI::PositiveNumber);
  bi->add_option("--max-iters", baseline.max_iters, "Gauss-Seidel sweep limit")->check(CLI::PositiveNumber);

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Pivot report JSONs into comparison tables");
  r->add_option("reports", report.inputs, "Report JSON files")->required();
  r->add_option("-o,--out", report.out_dir, "Output directory")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolkitVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& pe) {
    err << "error: " << pe.what() << "\n";
    return kValidationError;
  }

  try {
    if (*t) return cmd_transform(common, transform, out, err);
    if (*e) return cmd_eval(common, eval, out);
    if (*m) return cmd_eval_ml(common, ml, out);
    if (*s) return cmd_stats(common, stats, out);
    if (*bi) return cmd_baseline_interp(common, baseline, out);
    if (*r) return cmd_report(common, report, out);
  } catch (const MissingPredictionError& mp) {
    err << "error: " << mp.what() << "\n";
    return kMissingData;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_status(ex.code());
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace lvp::cli
