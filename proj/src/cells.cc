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

#include "geopart/cells.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "geopart/errors.h"

namespace geopart {
namespace {

double BandHeight(int level) { return 180.0 / std::ldexp(1.0, level); }
double ColumnWidth(int level) { return 360.0 / std::ldexp(1.0, level + 1); }

bool ParseInt(std::string_view text, int64_t* out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

void CheckLevel(int level) {
  if (level < 0 || level > kMaxCellLevel) {
    Fail(ErrorKind::kInvalidInput,
         "cell level " + std::to_string(level) + " outside [0, 24]");
  }
}

CellId::CellId(int level, int64_t row, int64_t col)
    : level_(level), row_(row), col_(col) {
  CheckLevel(level);
  if (row < 0 || row >= RowCount(level) || col < 0 ||
      col >= ColumnCount(level)) {
    Fail(ErrorKind::kInvalidInput, "cell coordinates out of range for level " +
                                       std::to_string(level));
  }
}

CellId CellId::FromLinearIndex(int level, int64_t index) {
  CheckLevel(level);
  if (index < 0 || index >= CellCount(level)) {
    Fail(ErrorKind::kInvalidInput, "linear cell index out of range");
  }
  const int64_t cols = ColumnCount(level);
  return CellId(level, index / cols, index % cols);
}

std::string CellId::ToString() const {
  return "L" + std::to_string(level_) + "/" + std::to_string(row_) + "/" +
         std::to_string(col_);
}

CellId CellId::Parse(std::string_view text) {
  const auto bad = [&]() {
    Fail(ErrorKind::kInvalidInput,
         "malformed cell id '" + std::string(text) + "'");
  };
  if (text.size() < 2 || text[0] != 'L') bad();
  const size_t s1 = text.find('/');
  const size_t s2 = s1 == std::string_view::npos ? s1 : text.find('/', s1 + 1);
  if (s2 == std::string_view::npos) bad();
  int64_t level = 0, row = 0, col = 0;
  if (!ParseInt(text.substr(1, s1 - 1), &level) ||
      !ParseInt(text.substr(s1 + 1, s2 - s1 - 1), &row) ||
      !ParseInt(text.substr(s2 + 1), &col)) {
    bad();
  }
  if (level < 0 || level > kMaxCellLevel) bad();
  return CellId(static_cast<int>(level), row, col);
}

bool CellBounds::Contains(const GeoPoint& p) const {
  const bool in_lat = p.lat() >= lat_min &&
                      (p.lat() < lat_max || (lat_max == 90.0 && p.lat() == 90.0));
  return in_lat && p.lng() >= lng_min && p.lng() < lng_max;
}

CellId CellAt(const GeoPoint& p, int level) {
  CheckLevel(level);
  const int64_t rows = CellId::RowCount(level);
  const int64_t cols = CellId::ColumnCount(level);
  auto row = static_cast<int64_t>(
      std::floor((p.lat() + 90.0) * static_cast<double>(rows) / 180.0));
  auto col = static_cast<int64_t>(
      std::floor((p.lng() + 180.0) * static_cast<double>(cols) / 360.0));
  row = std::clamp<int64_t>(row, 0, rows - 1);
  col = std::clamp<int64_t>(col, 0, cols - 1);
  return CellId(level, row, col);
}

CellBounds Bounds(const CellId& c) {
  const double h = BandHeight(c.level());
  const double w = ColumnWidth(c.level());
  CellBounds b;
  b.lat_min = -90.0 + static_cast<double>(c.row()) * h;
  b.lat_max = -90.0 + static_cast<double>(c.row() + 1) * h;
  b.lng_min = -180.0 + static_cast<double>(c.col()) * w;
  b.lng_max = -180.0 + static_cast<double>(c.col() + 1) * w;
  return b;
}

GeoPoint CellCenter(const CellId& c) {
  const CellBounds b = Bounds(c);
  return GeoPoint(0.5 * (b.lat_min + b.lat_max), 0.5 * (b.lng_min + b.lng_max));
}

std::vector<CellId> Neighbors(const CellId& c) {
  const int64_t rows = CellId::RowCount(c.level());
  const int64_t cols = CellId::ColumnCount(c.level());
  std::vector<CellId> out;
  out.reserve(4);
  out.emplace_back(c.level(), c.row(), (c.col() + 1) % cols);
  out.emplace_back(c.level(), c.row(), (c.col() + cols - 1) % cols);
  if (c.row() + 1 < rows) out.emplace_back(c.level(), c.row() + 1, c.col());
  if (c.row() > 0) out.emplace_back(c.level(), c.row() - 1, c.col());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // Level 0 has two columns, so the wrap can land back on the cell itself.
  std::erase(out, c);
  return out;
}

std::vector<CellId> Children(const CellId& c) {
  if (c.level() >= kMaxCellLevel) {
    Fail(ErrorKind::kInvalidInput, "cell at maximum level has no children");
  }
  const int l = c.level() + 1;
  const int64_t r = 2 * c.row();
  const int64_t k = 2 * c.col();
  return {CellId(l, r, k), CellId(l, r, k + 1), CellId(l, r + 1, k),
          CellId(l, r + 1, k + 1)};
}

CellId Parent(const CellId& c) {
  if (c.level() == 0) {
    Fail(ErrorKind::kInvalidInput, "level-0 cell has no parent");
  }
  return CellId(c.level() - 1, c.row() / 2, c.col() / 2);
}

}  // namespace geopart
