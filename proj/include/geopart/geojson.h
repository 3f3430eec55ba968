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

// GeoJSON (RFC 7946) export of geoclass sets and predictions.

#ifndef GEOPART_GEOJSON_H_
#define GEOPART_GEOJSON_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geopart/partition.h"
#include "geopart/pipeline.h"

namespace geopart {

// Vertex on the cell-grid lattice: x = column edge, y = row edge.
using GridVertex = std::pair<int64_t, int64_t>;
using GridRing = std::vector<GridVertex>;  // open (first vertex not repeated)

struct GridPolygon {
  GridRing outer;               // counter-clockwise
  std::vector<GridRing> holes;  // clockwise
};

// Dissolves a set of cells into rectilinear polygons on the planar lat/lng
// grid.  Shared edges cancel and collinear vertices are dropped.  Regions are
// not joined across the antimeridian, so a region straddling it yields one
// polygon on each side.
std::vector<GridPolygon> DissolveCells(int level, std::span<const int64_t> cells);

// Shoelace area in grid units (cells); positive for counter-clockwise rings.
double SignedArea(const GridRing& ring);

// One MultiPolygon feature per class with properties
// {set_id, class, cell_count}.
nlohmann::json GeoclassSetToGeoJson(const GeoclassSet& set);

struct PredictionExport {
  std::string query_id;
  GeoPoint predicted;
  bool has_truth = false;
  GeoPoint truth;
};

// One Point feature per prediction, plus a LineString from prediction to
// truth (properties carry error_km) when truth is known.
nlohmann::json PredictionsToGeoJson(std::span<const PredictionExport> predictions);

}  // namespace geopart

#endif  // GEOPART_GEOJSON_H_
