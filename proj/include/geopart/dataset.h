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

// Geotagged feature records binned into the cells of one grid level.

#ifndef GEOPART_DATASET_H_
#define GEOPART_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "geopart/cells.h"
#include "geopart/geo.h"

namespace geopart {

// Aggregates are stored densely, one per cell, so the level is capped well
// below kMaxCellLevel (level 12 is already 33.5M cells).
inline constexpr int kMaxDatasetLevel = 12;

struct GeoRecord {
  std::string id;
  GeoPoint location;
  std::vector<double> feature;
};

struct CellAggregate {
  int64_t image_count = 0;
  // Empty when image_count == 0.
  std::vector<double> mean_feature;
  // Sum of the unit vectors of member records.
  Vec3 location_sum;
};

class Dataset {
 public:
  // Throws kInvalidInput for levels outside [0, kMaxDatasetLevel].
  explicit Dataset(int level);

  int level() const { return level_; }
  // 0 until the first record fixes it.
  int feature_dim() const { return feature_dim_ < 0 ? 0 : feature_dim_; }
  int64_t cell_count() const { return static_cast<int64_t>(aggregates_.size()); }
  int64_t nonempty_cell_count() const { return nonempty_cells_; }

  std::span<const GeoRecord> records() const { return records_; }
  // Linear cell index of each record, parallel to records().
  std::span<const int64_t> record_cells() const { return record_cells_; }
  // Indexed by CellId::linear_index().
  std::span<const CellAggregate> aggregates() const { return aggregates_; }
  const CellAggregate& aggregate(const CellId& c) const;
  bool HasId(const std::string& id) const { return ids_.contains(id); }

  // Throws kInvalidInput on a feature dimension mismatch, non-finite
  // feature value or duplicate id.  The dataset is unchanged on error.
  void Add(GeoRecord record);

  // Appends another shard of the same level and dimension.  Aggregates
  // combine by count-weighted means and vector sums.
  void Merge(const Dataset& other);

 private:
  int level_;
  int feature_dim_ = -1;
  int64_t nonempty_cells_ = 0;
  std::vector<GeoRecord> records_;
  std::vector<int64_t> record_cells_;
  std::vector<CellAggregate> aggregates_;
  std::unordered_set<std::string> ids_;
};

struct IngestOptions {
  // Any rejected line becomes fatal.
  bool strict = false;
  // Cap on stored rejection messages; counting continues past it.
  size_t max_messages = 100;
};

struct IngestReport {
  int64_t accepted = 0;
  int64_t rejected = 0;
  std::vector<std::string> messages;  // "line N: reason"
};

// Reads JSON Lines: {"id": ..., "lat": ..., "lng": ..., "feat": [...]}.
// Malformed lines, invalid coordinates and duplicate ids are rejected and
// reported; a feature-dimension mismatch is always fatal.
Dataset Ingest(std::istream& in, int level, IngestReport* report,
               const IngestOptions& options = {});

// Same as Ingest for CSV with header "id,lat,lng,f0,...,f{D-1}".
Dataset IngestCsv(std::istream& in, int level, IngestReport* report,
                  const IngestOptions& options = {});

// Parses records without binning (queries).  Same line format as Ingest;
// lat/lng may be absent, in which case `location` is (0, 0) and has_truth
// is false.
struct QueryRecord {
  std::string id;
  bool has_truth = false;
  GeoPoint location;
  std::vector<double> feature;
};
std::vector<QueryRecord> ReadQueries(std::istream& in);

std::string RecordToJsonLine(const GeoRecord& r);

// Directory layout: manifest.json, records.jsonl, aggregates.json.
struct DatasetManifest {
  int level = 0;
  int feature_dim = 0;
  int64_t record_count = 0;
  int64_t nonempty_cells = 0;
  int64_t rejected = 0;
  uint64_t seed = 0;
  std::string records_hash;
  std::string aggregates_hash;
  std::string content_hash;
};

DatasetManifest SaveDataset(const Dataset& d, const std::filesystem::path& dir,
                            uint64_t seed, int64_t rejected = 0);
// Verifies every stored hash.  `manifest` may be null.
Dataset LoadDataset(const std::filesystem::path& dir,
                    DatasetManifest* manifest = nullptr);

}  // namespace geopart

#endif  // GEOPART_DATASET_H_
