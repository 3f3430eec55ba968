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

#include "geopart/geojson.h"

#include <algorithm>
#include <map>
#include <set>

#include "geopart/cells.h"
#include "geopart/errors.h"

namespace geopart {

using nlohmann::json;

namespace {

using Edge = std::pair<GridVertex, GridVertex>;

GridVertex Direction(const Edge& e) {
  auto sign = [](int64_t v) { return static_cast<int64_t>((v > 0) - (v < 0)); };
  return {sign(e.second.first - e.first.first), sign(e.second.second - e.first.second)};
}

GridRing DropCollinear(const GridRing& ring) {
  GridRing out;
  const size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    const GridVertex& prev = ring[(i + n - 1) % n];
    const GridVertex& cur = ring[i];
    const GridVertex& next = ring[(i + 1) % n];
    const int64_t cross = (cur.first - prev.first) * (next.second - cur.second) -
                          (cur.second - prev.second) * (next.first - cur.first);
    if (cross != 0) out.push_back(cur);
  }
  return out;
}

// Ray casting; the probe never lies on a lattice line.
bool Contains(const GridRing& ring, double px, double py) {
  bool inside = false;
  const size_t n = ring.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = static_cast<double>(ring[i].first);
    const double yi = static_cast<double>(ring[i].second);
    const double xj = static_cast<double>(ring[j].first);
    const double yj = static_cast<double>(ring[j].second);
    if ((yi > py) != (yj > py) && px < (xj - xi) * (py - yi) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

json RingToJson(const GridRing& ring, int level) {
  const double h = 180.0 / static_cast<double>(CellId::RowCount(level));
  const double w = 360.0 / static_cast<double>(CellId::ColumnCount(level));
  json coords = json::array();
  for (const GridVertex& v : ring) {
    coords.push_back({-180.0 + static_cast<double>(v.first) * w,
                      -90.0 + static_cast<double>(v.second) * h});
  }
  coords.push_back(coords.front());
  return coords;
}

}  // namespace

double SignedArea(const GridRing& ring) {
  double twice = 0.0;
  const size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    const GridVertex& a = ring[i];
    const GridVertex& b = ring[(i + 1) % n];
    twice += static_cast<double>(a.first * b.second - b.first * a.second);
  }
  return 0.5 * twice;
}

std::vector<GridPolygon> DissolveCells(int level, std::span<const int64_t> cells) {
  CheckLevel(level);
  std::set<Edge> edges;
  for (int64_t linear : cells) {
    const CellId c = CellId::FromLinearIndex(level, linear);
    const int64_t x = c.col();
    const int64_t y = c.row();
    const GridVertex corners[4] = {{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}};
    for (int k = 0; k < 4; ++k) {
      const Edge e{corners[k], corners[(k + 1) % 4]};
      const Edge rev{e.second, e.first};
      // An edge shared with another member cell appears in both directions.
      if (!edges.erase(rev)) edges.insert(e);
    }
  }

  std::map<GridVertex, std::vector<GridVertex>> outgoing;
  for (const Edge& e : edges) outgoing[e.first].push_back(e.second);

  std::vector<GridRing> rings;
  while (!edges.empty()) {
    Edge e = *edges.begin();
    const GridVertex start = e.first;
    GridRing ring;
    while (true) {
      edges.erase(e);
      auto& outs = outgoing[e.first];
      outs.erase(std::find(outs.begin(), outs.end(), e.second));
      ring.push_back(e.first);
      if (e.second == start) break;
      // Prefer the sharpest left turn so rings that touch at a corner stay
      // separate loops.
      const GridVertex d = Direction(e);
      const GridVertex prefs[3] = {{-d.second, d.first}, d, {d.second, -d.first}};
      const auto& next_outs = outgoing[e.second];
      bool found = false;
      for (const GridVertex& want : prefs) {
        for (const GridVertex& to : next_outs) {
          if (Direction({e.second, to}) == want) {
            e = {e.second, to};
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) Fail(ErrorKind::kInvalidInput, "cell boundary is not closed");
    }
    rings.push_back(DropCollinear(ring));
  }

  std::vector<GridPolygon> polygons;
  std::vector<GridRing> holes;
  for (GridRing& r : rings) {
    if (SignedArea(r) > 0) {
      polygons.push_back({std::move(r), {}});
    } else {
      holes.push_back(std::move(r));
    }
  }
  for (GridRing& hole : holes) {
    // A point just right of the first edge lies inside the hole.
    const GridVertex& a = hole[0];
    const GridVertex& b = hole[1];
    const GridVertex d = Direction({a, b});
    const double px = 0.5 * static_cast<double>(a.first + b.first) + 0.25 * static_cast<double>(d.second);
    const double py = 0.5 * static_cast<double>(a.second + b.second) - 0.25 * static_cast<double>(d.first);
    GridPolygon* owner = nullptr;
    double owner_area = 0.0;
    for (GridPolygon& poly : polygons) {
      const double area = SignedArea(poly.outer);
      if (Contains(poly.outer, px, py) && (!owner || area < owner_area)) {
        owner = &poly;
        owner_area = area;
      }
    }
    if (!owner) Fail(ErrorKind::kInvalidInput, "hole ring outside every polygon");
    owner->holes.push_back(std::move(hole));
  }
  return polygons;
}

json GeoclassSetToGeoJson(const GeoclassSet& set) {
  json features = json::array();
  for (int32_t c = 0; c < set.class_count(); ++c) {
    const auto cells = set.class_cells(c);
    json polys = json::array();
    for (const GridPolygon& p : DissolveCells(set.level(), cells)) {
      json rings = json::array();
      rings.push_back(RingToJson(p.outer, set.level()));
      for (const GridRing& h : p.holes) rings.push_back(RingToJson(h, set.level()));
      polys.push_back(std::move(rings));
    }
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "MultiPolygon"}, {"coordinates", std::move(polys)}}},
        {"properties",
         {{"set_id", set.set_id()}, {"class", c}, {"cell_count", cells.size()}}},
    });
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

json PredictionsToGeoJson(std::span<const PredictionExport> predictions) {
  json features = json::array();
  for (const PredictionExport& p : predictions) {
    const json point = {p.predicted.lng(), p.predicted.lat()};
    json props = {{"query_id", p.query_id}, {"kind", "prediction"}};
    if (p.has_truth) props["error_km"] = GeodesicKm(p.predicted, p.truth);
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", point}}},
                        {"properties", props}});
    if (p.has_truth) {
      const json line = {point, {p.truth.lng(), p.truth.lat()}};
      props["kind"] = "truth_link";
      features.push_back({{"type", "Feature"},
                          {"geometry", {{"type", "LineString"}, {"coordinates", line}}},
                          {"properties", std::move(props)}});
    }
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

}  // namespace geopart
