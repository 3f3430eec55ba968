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

// Hierarchical equirectangular cell grid over the sphere.
//
// Level L splits latitude into 2^L bands and longitude into 2^(L+1) columns,
// so every cell spans the same number of degrees in each direction and there
// are 2^(2L+1) cells in total.  Each cell has four children at level L+1.
// Rows grow northward from the south pole; columns grow eastward from -180.
//
// Cells are half-open in both coordinates ([min, max)), except that the top
// row also owns latitude +90.  Two cells are adjacent only when they share an
// edge; east/west adjacency wraps around the antimeridian.

#ifndef GEOPART_CELLS_H_
#define GEOPART_CELLS_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "geopart/geo.h"

namespace geopart {

inline constexpr int kMaxCellLevel = 24;

struct CellBounds {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lng_min = 0.0;
  double lng_max = 0.0;

  // Half-open containment, with the top row closed at +90.
  bool Contains(const GeoPoint& p) const;
};

class CellId {
 public:
  CellId() = default;
  // Throws kInvalidInput if the coordinates are out of range for `level`.
  CellId(int level, int64_t row, int64_t col);

  int level() const { return level_; }
  int64_t row() const { return row_; }
  int64_t col() const { return col_; }

  // Row-major position among the cells of this level.
  int64_t linear_index() const { return row_ * ColumnCount(level_) + col_; }
  static CellId FromLinearIndex(int level, int64_t index);

  static int64_t RowCount(int level) { return int64_t{1} << level; }
  static int64_t ColumnCount(int level) { return int64_t{1} << (level + 1); }
  static int64_t CellCount(int level) { return int64_t{1} << (2 * level + 1); }

  // "L{level}/{row}/{col}"
  std::string ToString() const;
  // Throws kInvalidInput on malformed text.
  static CellId Parse(std::string_view text);

  friend auto operator<=>(const CellId&, const CellId&) = default;

 private:
  int level_ = 0;
  int64_t row_ = 0;
  int64_t col_ = 0;
};

// Throws kInvalidInput when level is outside [0, kMaxCellLevel].
CellId CellAt(const GeoPoint& p, int level);

CellBounds Bounds(const CellId& c);

// Geometric midpoint of the cell's bounds.
GeoPoint CellCenter(const CellId& c);

// Edge-sharing neighbors, sorted and without duplicates.
std::vector<CellId> Neighbors(const CellId& c);

// The four children in row-major order (south-west first).
std::vector<CellId> Children(const CellId& c);
CellId Parent(const CellId& c);

void CheckLevel(int level);

}  // namespace geopart

#endif  // GEOPART_CELLS_H_
