// Copyright 2026 The Geopart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "geopart/cli.h"
#include "geopart/classify.h"
#include "geopart/dataset.h"
#include "geopart/errors.h"
#include "geopart/eval.h"
#include "geopart/fusion.h"
#include "geopart/geojson.h"
#include "geopart/hash.h"
#include "geopart/partition.h"
#include "geopart/pipeline.h"
#include "geopart/region_graph.h"
#include "geopart/synthetic.h"

namespace geopart {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kSummaryFile = "summary.json";
constexpr const char* kIndexCacheFile = "fine_index.json";

std::string ReadText(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteText(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + p.string());
  out << text;
  if (!out) Fail(ErrorKind::kIo, "write failed for " + p.string());
}

json ReadJson(const fs::path& p) {
  try {
    return json::parse(ReadText(p));
  } catch (const json::parse_error& e) {
    Fail(ErrorKind::kInvalidInput, p.string() + ": " + e.what());
  }
}

std::vector<QueryRecord> ReadQueryFile(const fs::path& p) {
  std::istringstream is(ReadText(p));
  return ReadQueries(is);
}

std::vector<double> ParseRadii(const std::vector<double>& given) {
  std::vector<double> radii = given.empty() ? DefaultRadiiKm() : given;
  CheckRadii(radii);
  return radii;
}

struct LoadedSets {
  std::vector<GeoclassSet> sets;
  json summary;
};

LoadedSets LoadSets(const fs::path& dir, const std::string& dataset_hash) {
  LoadedSets out;
  out.summary = ReadJson(dir / kSummaryFile);
  VerifyContentHash(out.summary, "sets summary");
  if (out.summary.value("dataset_hash", std::string()) != dataset_hash) {
    Fail(ErrorKind::kInvalidInput,
         "geoclass sets in " + dir.string() + " were generated from a different dataset");
  }
  for (const json& entry : out.summary.at("sets")) {
    const json doc = ReadJson(dir / entry.at("file").get<std::string>());
    GeoclassSet s = GeoclassSet::FromJson(doc);
    if (doc.at("content_hash") != entry.at("content_hash")) {
      Fail(ErrorKind::kInvalidInput,
           "set '" + s.set_id() + "' does not match the sets summary hash");
    }
    out.sets.push_back(std::move(s));
  }
  if (out.sets.empty()) Fail(ErrorKind::kInvalidInput, "no geoclass sets in " + dir.string());
  return out;
}

// Reuses a cached index when it was built from exactly these sets.
FinePartitionIndex LoadOrBuildIndex(std::span<const GeoclassSet> sets,
                                    const std::optional<fs::path>& cache,
                                    std::ostream& out) {
  std::vector<std::string> hashes;
  for (const GeoclassSet& s : sets) hashes.push_back(JsonContentHash(s.ToJson()));
  if (cache && fs::exists(*cache)) {
    try {
      FinePartitionIndex idx = FinePartitionIndex::FromJson(ReadJson(*cache));
      const auto cached = idx.set_hashes();
      if (std::equal(cached.begin(), cached.end(), hashes.begin(), hashes.end())) {
        out << "fine index: cached (" << idx.partition_count() << " partitions)\n";
        return idx;
      }
    } catch (const Error&) {
      // Stale or corrupt cache: rebuild below.
    }
  }
  FinePartitionIndex idx = FinePartitionIndex::Build(sets);
  out << "fine index: built (" << idx.partition_count() << " partitions)\n";
  if (cache) WriteText(*cache, idx.ToJson().dump() + "\n");
  return idx;
}

std::string FileHash(const fs::path& p) { return ContentHash(ReadText(p)); }

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string train_out, test_out;
  SyntheticWorldOptions options;
};

int CmdSynth(const SynthArgs& a, std::ostream& out) {
  const SyntheticWorld world = GenerateSyntheticWorld(a.options);
  std::string train, test;
  for (const GeoRecord& r : world.train) train += RecordToJsonLine(r) + "\n";
  for (const GeoRecord& r : world.test) test += RecordToJsonLine(r) + "\n";
  WriteText(a.train_out, train);
  WriteText(a.test_out, test);
  out << "wrote " << world.train.size() << " training and " << world.test.size()
      << " test records (seed " << a.options.seed << ")\n";
  return kExitOk;
}

struct BuildArgs {
  std::string input, out, format = "auto";
  int level = 6;
  bool strict = false;
  uint64_t seed = 0;
};

int CmdBuild(const BuildArgs& a, std::ostream& out) {
  std::istringstream in(ReadText(a.input));
  std::string format = a.format;
  if (format == "auto") format = fs::path(a.input).extension() == ".csv" ? "csv" : "jsonl";
  IngestReport report;
  const IngestOptions options{.strict = a.strict};
  Dataset d = format == "csv" ? IngestCsv(in, a.level, &report, options)
                              : Ingest(in, a.level, &report, options);
  for (const std::string& m : report.messages) out << "rejected " << m << "\n";
  out << "records: " << report.accepted << " accepted, " << report.rejected
      << " rejected\n";
  if (d.records().empty()) {
    Fail(ErrorKind::kInvalidInput, "no valid records in " + a.input);
  }
  const DatasetManifest m = SaveDataset(d, a.out, a.seed, report.rejected);
  out << "dataset: level " << m.level << ", " << m.nonempty_cells
      << " non-empty cells, manifest hash " << m.content_hash << "\n";
  return kExitOk;
}

struct GenSetsArgs {
  std::string dataset, params, out;
  std::optional<uint64_t> seed;
};

int CmdGenSets(const GenSetsArgs& a, std::ostream& out) {
  DatasetManifest manifest;
  const Dataset d = LoadDataset(a.dataset, &manifest);
  const std::vector<GenParams> params = ParseParamsFile(ReadJson(a.params));
  const uint64_t seed = a.seed.value_or(manifest.seed);
  const RegionGraph g = BuildBaseGraph(d, seed);
  out << "base graph: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";

  fs::create_directories(a.out);
  json entries = json::array();
  for (const GenParams& p : params) {
    const GeoclassSet s =
        GenerateGeoclassSet(g, p, GenerationOptions{.on_merge = {}, .dataset_hash = manifest.content_hash});
    const json doc = s.ToJson();
    const std::string file = "set_" + s.set_id() + ".json";
    WriteText(fs::path(a.out) / file, doc.dump() + "\n");
    size_t lo = SIZE_MAX, hi = 0;
    for (int32_t c = 0; c < s.class_count(); ++c) {
      lo = std::min(lo, s.class_cells(c).size());
      hi = std::max(hi, s.class_cells(c).size());
    }
    entries.push_back({{"set_id", s.set_id()},
                       {"file", file},
                       {"class_count", s.class_count()},
                       {"min_class_cells", lo},
                       {"max_class_cells", hi},
                       {"content_hash", doc["content_hash"]}});
    out << "set " << s.set_id() << ": " << s.class_count() << " classes, "
        << lo << ".." << hi << " cells per class\n";
  }
  json summary = {{"format", "geopart-sets-summary"},
                  {"dataset_hash", manifest.content_hash},
                  {"seed", seed},
                  {"level", d.level()},
                  {"graph_nodes", g.node_count()},
                  {"sets", std::move(entries)}};
  StampContentHash(summary);
  WriteText(fs::path(a.out) / kSummaryFile, summary.dump(2) + "\n");
  return kExitOk;
}

struct TrainArgs {
  std::string dataset, sets, out;
  double temperature = 1.0;
};

int CmdTrain(const TrainArgs& a, std::ostream& out) {
  DatasetManifest manifest;
  const Dataset d = LoadDataset(a.dataset, &manifest);
  const LoadedSets loaded = LoadSets(a.sets, manifest.content_hash);
  fs::create_directories(a.out);
  for (const GeoclassSet& s : loaded.sets) {
    const CentroidClassifier c = CentroidClassifier::Train(d, s, a.temperature);
    json doc = c.ToJson();
    doc["set_hash"] = JsonContentHash(s.ToJson());
    StampContentHash(doc);
    WriteText(fs::path(a.out) / ("classifier_" + s.set_id() + ".json"), doc.dump() + "\n");
    int32_t empty = 0;
    for (int32_t k = 0; k < c.class_count(); ++k) empty += c.class_empty(k) ? 1 : 0;
    out << "classifier " << s.set_id() << ": " << c.class_count() << " classes ("
        << empty << " without training records)\n";
  }
  return kExitOk;
}

struct PredictArgs {
  std::string dataset, sets, queries, out;
  std::string scores, models;
  std::string mode = "normalized";
  std::string index_cache;
  bool no_cache = false;
  double temperature = 1.0;
  uint64_t seed = 0;
};

int CmdPredict(const PredictArgs& a, std::ostream& out) {
  const FusionMode mode = ParseFusionMode(a.mode);
  DatasetManifest manifest;
  const Dataset d = LoadDataset(a.dataset, &manifest);
  const LoadedSets loaded = LoadSets(a.sets, manifest.content_hash);
  const std::vector<QueryRecord> queries = ReadQueryFile(a.queries);

  std::optional<fs::path> cache;
  if (!a.no_cache) {
    cache = a.index_cache.empty() ? fs::path(a.sets) / kIndexCacheFile : fs::path(a.index_cache);
  }
  const FinePartitionIndex index = LoadOrBuildIndex(loaded.sets, cache, out);

  std::vector<ExpectedSet> expected;
  for (const GeoclassSet& s : loaded.sets) expected.push_back({s.set_id(), s.class_count()});

  std::map<std::string, std::vector<ScoreVector>> external;
  std::vector<CentroidClassifier> classifiers;
  if (!a.scores.empty()) {
    std::istringstream is(ReadText(a.scores));
    external = LoadScores(is, expected);
  } else if (!a.models.empty()) {
    for (const GeoclassSet& s : loaded.sets) {
      const json doc = ReadJson(fs::path(a.models) / ("classifier_" + s.set_id() + ".json"));
      CentroidClassifier c = CentroidClassifier::FromJson(doc);
      if (doc.value("set_hash", std::string()) != JsonContentHash(s.ToJson())) {
        Fail(ErrorKind::kInvalidInput,
             "classifier for set '" + s.set_id() + "' was trained on a different set");
      }
      classifiers.push_back(std::move(c));
    }
  } else {
    classifiers = TrainClassifiers(d, loaded.sets, a.temperature);
  }

  std::string lines;
  int64_t expanded = 0;
  for (const QueryRecord& q : queries) {
    std::vector<ScoreVector> scores;
    if (!a.scores.empty()) {
      const auto it = external.find(q.id);
      if (it == external.end()) {
        Fail(ErrorKind::kInvalidInput, "score file has no scores for query '" + q.id + "'");
      }
      scores = it->second;
    } else {
      if (q.feature.empty() && d.feature_dim() > 0) {
        Fail(ErrorKind::kInvalidInput, "query '" + q.id + "' has no feature");
      }
      scores = ScoreQuery(classifiers, q.feature);
    }
    const Prediction p = PredictLocation(FuseScores(scores, index, mode), d);
    expanded += p.expanded ? 1 : 0;
    lines += PredictionLine(q.id, p, d.level()) + "\n";
  }
  WriteText(a.out, lines);
  json sidecar = {{"format", "geopart-predictions-manifest"},
                  {"mode", FusionModeName(mode)},
                  {"seed", a.seed},
                  {"dataset_hash", manifest.content_hash},
                  {"sets_hash", loaded.summary["content_hash"]},
                  {"queries_hash", FileHash(a.queries)},
                  {"predictions_hash", ContentHash(lines)}};
  StampContentHash(sidecar);
  WriteText(a.out + ".manifest.json", sidecar.dump(2) + "\n");
  out << "predicted " << queries.size() << " queries (" << FusionModeName(mode)
      << "), " << expanded << " needed argmax expansion\n";
  return kExitOk;
}

struct EvalArgs {
  std::string predictions, truth, csv, json_out, label = "model";
  std::vector<double> radii;
};

int CmdEval(const EvalArgs& a, std::ostream& out) {
  const std::vector<double> radii = ParseRadii(a.radii);
  std::istringstream pis(ReadText(a.predictions));
  std::map<std::string, GeoPoint> pred;
  for (const PredictionRecord& r : ReadPredictions(pis)) {
    if (!pred.emplace(r.query_id, r.location).second) {
      Fail(ErrorKind::kInvalidInput, "duplicate prediction for '" + r.query_id + "'");
    }
  }
  std::map<std::string, GeoPoint> truth;
  for (const QueryRecord& q : ReadQueryFile(a.truth)) {
    if (!q.has_truth) Fail(ErrorKind::kInvalidInput, "truth for '" + q.id + "' lacks lat/lng");
    truth.emplace(q.id, q.location);
  }
  const EvalReport report = AccuracyAt(pred, truth, radii);
  const std::string csv = CsvHeader(radii) + "\n" + CsvRow(a.label, report) + "\n";
  out << csv;
  if (!a.csv.empty()) WriteText(a.csv, csv);
  if (!a.json_out.empty()) {
    json doc = report.ToJson();
    doc["label"] = a.label;
    doc["predictions_hash"] = FileHash(a.predictions);
    doc["truth_hash"] = FileHash(a.truth);
    StampContentHash(doc);
    WriteText(a.json_out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

struct SweepArgs {
  std::string dataset, params, queries, csv, json_out, set_id;
  std::vector<int32_t> counts;
  std::vector<double> radii;
  std::optional<uint64_t> seed;
  double temperature = 1.0;
};

int CmdSweep(const SweepArgs& a, std::ostream& out) {
  const std::vector<double> radii = ParseRadii(a.radii);
  DatasetManifest manifest;
  const Dataset d = LoadDataset(a.dataset, &manifest);
  const std::vector<GenParams> params = ParseParamsFile(ReadJson(a.params));
  GenParams base = params.front();
  if (!a.set_id.empty()) {
    const auto it = std::find_if(params.begin(), params.end(),
                                 [&](const GenParams& p) { return p.set_id == a.set_id; });
    if (it == params.end()) Fail(ErrorKind::kInvalidInput, "no set '" + a.set_id + "' in params");
    base = *it;
  }
  const uint64_t seed = a.seed.value_or(manifest.seed);
  const RegionGraph g = BuildBaseGraph(d, seed);
  const std::vector<QueryRecord> queries = ReadQueryFile(a.queries);
  const auto rows = SweepClassCount(d, g, base, a.counts, queries, radii, a.temperature);

  std::string csv = CsvHeader(radii, "classes") + "\n";
  json doc_rows = json::array();
  for (const SweepRow& r : rows) {
    csv += CsvRow(std::to_string(r.class_count), r.report) + "\n";
    json row = r.report.ToJson();
    row.erase("queries");
    row["class_count"] = r.class_count;
    doc_rows.push_back(std::move(row));
  }
  out << csv;
  if (!a.csv.empty()) WriteText(a.csv, csv);
  if (!a.json_out.empty()) {
    json doc = {{"format", "geopart-sweep"},
                {"seed", seed},
                {"base_params", ParamsToJson(base)},
                {"dataset_hash", manifest.content_hash},
                {"rows", std::move(doc_rows)}};
    StampContentHash(doc);
    WriteText(a.json_out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

struct ExportArgs {
  std::string set_file, predictions, truth, out;
};

int CmdExport(const ExportArgs& a, std::ostream& out) {
  json geo;
  if (!a.set_file.empty()) {
    const GeoclassSet s = GeoclassSet::FromJson(ReadJson(a.set_file));
    geo = GeoclassSetToGeoJson(s);
  } else if (!a.predictions.empty()) {
    std::istringstream pis(ReadText(a.predictions));
    std::map<std::string, GeoPoint> truth;
    if (!a.truth.empty()) {
      for (const QueryRecord& q : ReadQueryFile(a.truth)) {
        if (q.has_truth) truth.emplace(q.id, q.location);
      }
    }
    std::vector<PredictionExport> items;
    for (const PredictionRecord& r : ReadPredictions(pis)) {
      PredictionExport e{r.query_id, r.location, false, {}};
      if (const auto it = truth.find(r.query_id); it != truth.end()) {
        e.has_truth = true;
        e.truth = it->second;
      }
      items.push_back(std::move(e));
    }
    geo = PredictionsToGeoJson(items);
  } else {
    Fail(ErrorKind::kInvalidInput, "export needs --set or --predictions");
  }
  WriteText(a.out, geo.dump() + "\n");
  out << "wrote " << geo["features"].size() << " features to " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial geoclass partitioning and score fusion"};
  app.set_config("--config", "", "TOML/INI config file (flags take precedence)");
  app.require_subcommand(1);

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic geotagged world");
  c_synth->add_option("--train-out", synth.train_out, "Training records (JSON Lines)")->required();
  c_synth->add_option("--test-out", synth.test_out, "Test records (JSON Lines)")->required();
  c_synth->add_option("--clusters", synth.options.clusters);
  c_synth->add_option("--dim", synth.options.feature_dim);
  c_synth->add_option("--train", synth.options.train_count);
  c_synth->add_option("--test", synth.options.test_count);
  c_synth->add_option("--seed", synth.options.seed);

  BuildArgs build;
  auto* c_build = app.add_subcommand("build", "Ingest records into a binned dataset");
  c_build->add_option("--input", build.input, "Records file (.jsonl or .csv)")->required();
  c_build->add_option("--out", build.out, "Dataset directory")->required();
  c_build->add_option("--format", build.format)->check(CLI::IsMember({"auto", "jsonl", "csv"}));
  c_build->add_option("--level", build.level, "Cell level");
  c_build->add_flag("--strict", build.strict, "Fail on any rejected record");
  c_build->add_option("--seed", build.seed, "Seed recorded for downstream commands");

  GenSetsArgs gen;
  auto* c_gen = app.add_subcommand("gen-sets", "Generate geoclass sets");
  c_gen->add_option("--dataset", gen.dataset)->required();
  c_gen->add_option("--params", gen.params, "Params JSON")->required();
  c_gen->add_option("--out", gen.out, "Output directory")->required();
  c_gen->add_option("--seed", gen.seed, "Base-graph seed (default: dataset seed)");

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Train centroid classifiers");
  c_train->add_option("--dataset", train.dataset)->required();
  c_train->add_option("--sets", train.sets)->required();
  c_train->add_option("--out", train.out)->required();
  c_train->add_option("--temperature", train.temperature);

  PredictArgs predict;
  auto* c_predict = app.add_subcommand("predict", "Fuse scores and predict locations");
  c_predict->add_option("--dataset", predict.dataset)->required();
  c_predict->add_option("--sets", predict.sets)->required();
  c_predict->add_option("--queries", predict.queries)->required();
  c_predict->add_option("--out", predict.out)->required();
  auto* o_scores = c_predict->add_option("--scores", predict.scores, "External score file");
  c_predict->add_option("--models", predict.models, "Trained classifier directory")
      ->excludes(o_scores);
  c_predict->add_option("--mode", predict.mode)->check(CLI::IsMember({"normalized", "simple"}));
  c_predict->add_option("--index-cache", predict.index_cache);
  c_predict->add_flag("--no-cache", predict.no_cache);
  c_predict->add_option("--temperature", predict.temperature);
  c_predict->add_option("--seed", predict.seed);

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Accuracy at distance thresholds");
  c_eval->add_option("--predictions", ev.predictions)->required();
  c_eval->add_option("--truth", ev.truth, "Queries with lat/lng")->required();
  c_eval->add_option("--radii", ev.radii)->delimiter(',');
  c_eval->add_option("--csv", ev.csv);
  c_eval->add_option("--json", ev.json_out);
  c_eval->add_option("--label", ev.label);

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Single-classifier class-count sweep");
  c_sweep->add_option("--dataset", sweep.dataset)->required();
  c_sweep->add_option("--params", sweep.params)->required();
  c_sweep->add_option("--queries", sweep.queries)->required();
  c_sweep->add_option("--counts", sweep.counts)->delimiter(',')->required();
  c_sweep->add_option("--radii", sweep.radii)->delimiter(',');
  c_sweep->add_option("--set-id", sweep.set_id, "Params set used as the base");
  c_sweep->add_option("--csv", sweep.csv);
  c_sweep->add_option("--json", sweep.json_out);
  c_sweep->add_option("--seed", sweep.seed);
  c_sweep->add_option("--temperature", sweep.temperature);

  ExportArgs ex;
  auto* c_export = app.add_subcommand("export", "Export GeoJSON");
  auto* o_set = c_export->add_option("--set", ex.set_file, "Geoclass set JSON");
  auto* o_pred = c_export->add_option("--predictions", ex.predictions);
  o_set->excludes(o_pred);
  c_export->add_option("--truth", ex.truth);
  c_export->add_option("--out", ex.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*c_synth) return CmdSynth(synth, out);
    if (*c_build) return CmdBuild(build, out);
    if (*c_gen) return CmdGenSets(gen, out);
    if (*c_train) return CmdTrain(train, out);
    if (*c_predict) return CmdPredict(predict, out);
    if (*c_eval) return CmdEval(ev, out);
    if (*c_sweep) return CmdSweep(sweep, out);
    if (*c_export) return CmdExport(ex, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"geopart"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace geopart
