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

#include "geopart/dataset.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "geopart/errors.h"
#include "geopart/hash.h"

namespace geopart {

using nlohmann::json;

namespace {

constexpr const char* kManifestFile = "manifest.json";
constexpr const char* kRecordsFile = "records.jsonl";
constexpr const char* kAggregatesFile = "aggregates.json";

// Signals a per-line problem that ingestion may skip.
struct LineRejected {
  std::string reason;
};

std::vector<double> ParseFeature(const json& j) {
  if (!j.is_array()) throw LineRejected{"'feat' must be an array"};
  std::vector<double> f;
  f.reserve(j.size());
  for (const json& v : j) {
    if (!v.is_number()) throw LineRejected{"non-numeric feature value"};
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw LineRejected{"non-finite feature value"};
    f.push_back(x);
  }
  return f;
}

GeoRecord ParseRecordLine(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error&) {
    throw LineRejected{"malformed JSON"};
  }
  if (!j.is_object()) throw LineRejected{"record must be a JSON object"};
  for (const char* key : {"id", "lat", "lng", "feat"}) {
    if (!j.contains(key)) throw LineRejected{std::string("missing '") + key + "'"};
  }
  if (!j["id"].is_string()) throw LineRejected{"'id' must be a string"};
  if (!j["lat"].is_number() || !j["lng"].is_number()) {
    throw LineRejected{"'lat'/'lng' must be numbers"};
  }
  const double lat = j["lat"].get<double>();
  const double lng = j["lng"].get<double>();
  if (!IsValidLatLng(lat, lng)) throw LineRejected{"invalid lat/lng"};
  return GeoRecord{j["id"].get<std::string>(), GeoPoint(lat, lng),
                   ParseFeature(j["feat"])};
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseCsvNumber(const std::string& s) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw LineRejected{"non-numeric field '" + s + "'"};
  }
  if (used != s.size()) throw LineRejected{"non-numeric field '" + s + "'"};
  return v;
}

bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Shared driver for both input formats: `parse` maps a line to a record or
// throws LineRejected.
template <typename ParseFn>
Dataset IngestLines(std::istream& in, int level, IngestReport* report,
                    const IngestOptions& options, ParseFn parse,
                    int64_t first_line_no) {
  Dataset d(level);
  IngestReport local;
  IngestReport& rep = report ? *report : local;
  rep = IngestReport{};
  std::string line;
  int64_t line_no = first_line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    std::string reason;
    try {
      GeoRecord r = parse(line);
      if (!d.records().empty() &&
          static_cast<int>(r.feature.size()) != d.feature_dim()) {
        Fail(ErrorKind::kInvalidInput,
             "line " + std::to_string(line_no) + ": feature dimension " +
                 std::to_string(r.feature.size()) + " != " +
                 std::to_string(d.feature_dim()));
      }
      if (d.HasId(r.id)) throw LineRejected{"duplicate id '" + r.id + "'"};
      d.Add(std::move(r));
      ++rep.accepted;
      continue;
    } catch (const LineRejected& e) {
      reason = e.reason;
    }
    ++rep.rejected;
    const std::string msg = "line " + std::to_string(line_no) + ": " + reason;
    if (options.strict) Fail(ErrorKind::kInvalidInput, msg);
    if (rep.messages.size() < options.max_messages) rep.messages.push_back(msg);
  }
  return d;
}

}  // namespace

Dataset::Dataset(int level) : level_(level) {
  if (level < 0 || level > kMaxDatasetLevel) {
    Fail(ErrorKind::kInvalidInput, "dataset level " + std::to_string(level) +
                                       " outside [0, " +
                                       std::to_string(kMaxDatasetLevel) + "]");
  }
  aggregates_.resize(static_cast<size_t>(CellId::CellCount(level)));
}

const CellAggregate& Dataset::aggregate(const CellId& c) const {
  if (c.level() != level_) {
    Fail(ErrorKind::kInvalidInput, "cell " + c.ToString() +
                                       " is not at dataset level " +
                                       std::to_string(level_));
  }
  return aggregates_[static_cast<size_t>(c.linear_index())];
}

void Dataset::Add(GeoRecord record) {
  const int dim = static_cast<int>(record.feature.size());
  if (feature_dim_ >= 0 && dim != feature_dim_) {
    Fail(ErrorKind::kInvalidInput, "feature dimension " + std::to_string(dim) +
                                       " != dataset dimension " +
                                       std::to_string(feature_dim_));
  }
  for (double x : record.feature) {
    if (!std::isfinite(x)) Fail(ErrorKind::kInvalidInput, "non-finite feature");
  }
  if (ids_.contains(record.id)) {
    Fail(ErrorKind::kInvalidInput, "duplicate record id '" + record.id + "'");
  }
  feature_dim_ = dim;
  const int64_t cell = CellAt(record.location, level_).linear_index();
  CellAggregate& agg = aggregates_[static_cast<size_t>(cell)];
  if (agg.image_count == 0) {
    agg.mean_feature.assign(record.feature.size(), 0.0);
    ++nonempty_cells_;
  }
  ++agg.image_count;
  // Streaming mean keeps magnitudes bounded for large counts.
  const double inv = 1.0 / static_cast<double>(agg.image_count);
  for (size_t i = 0; i < record.feature.size(); ++i) {
    agg.mean_feature[i] += (record.feature[i] - agg.mean_feature[i]) * inv;
  }
  agg.location_sum += ToCartesian(record.location).vec();
  ids_.insert(record.id);
  record_cells_.push_back(cell);
  records_.push_back(std::move(record));
}

void Dataset::Merge(const Dataset& other) {
  if (other.level_ != level_) {
    Fail(ErrorKind::kInvalidInput, "cannot merge datasets of different levels");
  }
  if (other.feature_dim_ >= 0 && feature_dim_ >= 0 &&
      other.feature_dim_ != feature_dim_) {
    Fail(ErrorKind::kInvalidInput,
         "cannot merge datasets of different feature dimension");
  }
  for (const GeoRecord& r : other.records_) {
    if (ids_.contains(r.id)) {
      Fail(ErrorKind::kInvalidInput, "duplicate record id '" + r.id + "'");
    }
  }
  if (other.feature_dim_ >= 0) feature_dim_ = other.feature_dim_;
  for (size_t c = 0; c < aggregates_.size(); ++c) {
    const CellAggregate& src = other.aggregates_[c];
    if (src.image_count == 0) continue;
    CellAggregate& dst = aggregates_[c];
    if (dst.image_count == 0) {
      dst = src;
      ++nonempty_cells_;
      continue;
    }
    const double total = static_cast<double>(dst.image_count + src.image_count);
    const double wa = static_cast<double>(dst.image_count) / total;
    const double wb = static_cast<double>(src.image_count) / total;
    for (size_t i = 0; i < dst.mean_feature.size(); ++i) {
      dst.mean_feature[i] = wa * dst.mean_feature[i] + wb * src.mean_feature[i];
    }
    dst.image_count += src.image_count;
    dst.location_sum += src.location_sum;
  }
  for (size_t i = 0; i < other.records_.size(); ++i) {
    ids_.insert(other.records_[i].id);
    records_.push_back(other.records_[i]);
    record_cells_.push_back(other.record_cells_[i]);
  }
}

Dataset Ingest(std::istream& in, int level, IngestReport* report,
               const IngestOptions& options) {
  return IngestLines(in, level, report, options, ParseRecordLine, 0);
}

Dataset IngestCsv(std::istream& in, int level, IngestReport* report,
                  const IngestOptions& options) {
  std::string header;
  if (!std::getline(in, header)) {
    if (report) *report = IngestReport{};
    return Dataset(level);
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const std::vector<std::string> cols = SplitCsv(header);
  if (cols.size() < 3 || cols[0] != "id" || cols[1] != "lat" || cols[2] != "lng") {
    Fail(ErrorKind::kInvalidInput, "CSV header must start with id,lat,lng");
  }
  for (size_t i = 3; i < cols.size(); ++i) {
    if (cols[i] != "f" + std::to_string(i - 3)) {
      Fail(ErrorKind::kInvalidInput, "CSV feature columns must be f0..f{D-1}");
    }
  }
  const size_t width = cols.size();
  auto parse = [width](const std::string& raw) {
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != width) {
      // A different column count means a different feature dimension.
      Fail(ErrorKind::kInvalidInput,
           "CSV row has " + std::to_string(f.size()) + " fields, header has " +
               std::to_string(width));
    }
    const double lat = ParseCsvNumber(f[1]);
    const double lng = ParseCsvNumber(f[2]);
    if (!IsValidLatLng(lat, lng)) throw LineRejected{"invalid lat/lng"};
    std::vector<double> feat;
    feat.reserve(width - 3);
    for (size_t i = 3; i < width; ++i) {
      const double x = ParseCsvNumber(f[i]);
      if (!std::isfinite(x)) throw LineRejected{"non-finite feature value"};
      feat.push_back(x);
    }
    return GeoRecord{f[0], GeoPoint(lat, lng), std::move(feat)};
  };
  return IngestLines(in, level, report, options, parse, 1);
}

std::vector<QueryRecord> ReadQueries(std::istream& in) {
  std::vector<QueryRecord> out;
  std::unordered_set<std::string> seen;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    const std::string where = "query line " + std::to_string(line_no) + ": ";
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      Fail(ErrorKind::kInvalidInput, where + "malformed JSON");
    }
    QueryRecord q;
    if (j.contains("query_id") && j["query_id"].is_string()) {
      q.id = j["query_id"].get<std::string>();
    } else if (j.contains("id") && j["id"].is_string()) {
      q.id = j["id"].get<std::string>();
    } else {
      Fail(ErrorKind::kInvalidInput, where + "missing 'id'");
    }
    if (!seen.insert(q.id).second) {
      Fail(ErrorKind::kInvalidInput, where + "duplicate query id '" + q.id + "'");
    }
    if (j.contains("lat") && j.contains("lng")) {
      if (!j["lat"].is_number() || !j["lng"].is_number()) {
        Fail(ErrorKind::kInvalidInput, where + "'lat'/'lng' must be numbers");
      }
      q.location = GeoPoint(j["lat"].get<double>(), j["lng"].get<double>());
      q.has_truth = true;
    }
    if (j.contains("feat")) {
      try {
        q.feature = ParseFeature(j["feat"]);
      } catch (const LineRejected& e) {
        Fail(ErrorKind::kInvalidInput, where + e.reason);
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::string RecordToJsonLine(const GeoRecord& r) {
  json j;
  j["id"] = r.id;
  j["lat"] = r.location.lat();
  j["lng"] = r.location.lng();
  j["feat"] = r.feature;
  return j.dump();
}

namespace {

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteFile(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + p.string());
  out << bytes;
  if (!out) Fail(ErrorKind::kIo, "write failed for " + p.string());
}

std::string AggregatesJson(const Dataset& d) {
  json cells = json::array();
  const auto aggs = d.aggregates();
  for (size_t i = 0; i < aggs.size(); ++i) {
    const CellAggregate& a = aggs[i];
    if (a.image_count == 0) continue;
    cells.push_back({
        {"cell", CellId::FromLinearIndex(d.level(), static_cast<int64_t>(i)).ToString()},
        {"count", a.image_count},
        {"mean_feature", a.mean_feature},
        {"location_sum", {a.location_sum.x, a.location_sum.y, a.location_sum.z}},
    });
  }
  json doc = {{"level", d.level()}, {"cells", std::move(cells)}};
  return doc.dump() + "\n";
}

}  // namespace

DatasetManifest SaveDataset(const Dataset& d, const std::filesystem::path& dir,
                            uint64_t seed, int64_t rejected) {
  std::filesystem::create_directories(dir);
  std::string records;
  for (const GeoRecord& r : d.records()) records += RecordToJsonLine(r) + "\n";
  const std::string aggregates = AggregatesJson(d);

  DatasetManifest m;
  m.level = d.level();
  m.feature_dim = d.feature_dim();
  m.record_count = static_cast<int64_t>(d.records().size());
  m.nonempty_cells = d.nonempty_cell_count();
  m.rejected = rejected;
  m.seed = seed;
  m.records_hash = ContentHash(records);
  m.aggregates_hash = ContentHash(aggregates);

  json manifest = {
      {"format", "geopart-dataset"},
      {"version", 1},
      {"level", m.level},
      {"feature_dim", m.feature_dim},
      {"record_count", m.record_count},
      {"nonempty_cells", m.nonempty_cells},
      {"rejected", m.rejected},
      {"seed", m.seed},
      {"records_hash", m.records_hash},
      {"aggregates_hash", m.aggregates_hash},
  };
  StampContentHash(manifest);
  m.content_hash = manifest["content_hash"].get<std::string>();

  WriteFile(dir / kRecordsFile, records);
  WriteFile(dir / kAggregatesFile, aggregates);
  WriteFile(dir / kManifestFile, manifest.dump(2) + "\n");
  return m;
}

Dataset LoadDataset(const std::filesystem::path& dir, DatasetManifest* out) {
  json manifest;
  try {
    manifest = json::parse(ReadFile(dir / kManifestFile));
  } catch (const json::exception& e) {
    Fail(ErrorKind::kInvalidInput, "bad dataset manifest: " + std::string(e.what()));
  }
  VerifyContentHash(manifest, "dataset manifest");
  DatasetManifest m;
  try {
    m.level = manifest.at("level").get<int>();
    m.feature_dim = manifest.at("feature_dim").get<int>();
    m.record_count = manifest.at("record_count").get<int64_t>();
    m.nonempty_cells = manifest.at("nonempty_cells").get<int64_t>();
    m.rejected = manifest.value("rejected", int64_t{0});
    m.seed = manifest.at("seed").get<uint64_t>();
    m.records_hash = manifest.at("records_hash").get<std::string>();
    m.aggregates_hash = manifest.at("aggregates_hash").get<std::string>();
    m.content_hash = manifest.at("content_hash").get<std::string>();
  } catch (const json::exception& e) {
    Fail(ErrorKind::kInvalidInput, "bad dataset manifest: " + std::string(e.what()));
  }

  const std::string records = ReadFile(dir / kRecordsFile);
  if (ContentHash(records) != m.records_hash) {
    Fail(ErrorKind::kInvalidInput, "records file does not match manifest hash");
  }
  std::istringstream is(records);
  IngestReport report;
  Dataset d = Ingest(is, m.level, &report, IngestOptions{.strict = true});
  if (static_cast<int64_t>(d.records().size()) != m.record_count) {
    Fail(ErrorKind::kInvalidInput, "record count does not match manifest");
  }
  if (ContentHash(ReadFile(dir / kAggregatesFile)) != m.aggregates_hash ||
      ContentHash(AggregatesJson(d)) != m.aggregates_hash) {
    Fail(ErrorKind::kInvalidInput, "aggregates file does not match manifest hash");
  }
  if (out) *out = m;
  return d;
}

}  // namespace geopart
