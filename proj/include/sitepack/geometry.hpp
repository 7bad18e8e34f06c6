// Copyright 2026 The sitepack Authors
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

#ifndef SITEPACK_GEOMETRY_HPP_
#define SITEPACK_GEOMETRY_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>

namespace sitepack {

// One track-unit grid cell, addressed by its lower-left corner.
struct Cell {
  int x = 0;
  int y = 0;

  auto operator<=>(const Cell&) const = default;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept {
    const auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x));
    const auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.y));
    return std::hash<std::uint64_t>{}((ux << 32) | uy);
  }
};

inline int manhattan(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }
inline int chebyshev(Cell a, Cell b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

// Axis-aligned rectangle on the track grid. Covers cells [x, x+w) x [y, y+h).
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int top() const { return y + h; }
  long long area() const { return static_cast<long long>(w) * h; }
  bool empty() const { return w <= 0 || h <= 0; }
  bool contains(Cell c) const { return c.x >= x && c.x < right() && c.y >= y && c.y < top(); }

  auto operator<=>(const Rect&) const = default;
};

// True iff the interiors intersect. Shared edges are abutment, not overlap,
// and a zero-area rectangle overlaps nothing.
inline bool overlaps(const Rect& a, const Rect& b) {
  if (a.empty() || b.empty()) return false;
  return a.x < b.right() && b.x < a.right() && a.y < b.top() && b.y < a.top();
}

inline Rect unite(const Rect& a, const Rect& b) {
  const int x0 = std::min(a.x, b.x);
  const int y0 = std::min(a.y, b.y);
  const int x1 = std::max(a.right(), b.right());
  const int y1 = std::max(a.top(), b.top());
  return {x0, y0, x1 - x0, y1 - y0};
}

inline Rect inflate(const Rect& r, int by) { return {r.x - by, r.y - by, r.w + 2 * by, r.h + 2 * by}; }

inline Rect translate(const Rect& r, int dx, int dy) { return {r.x + dx, r.y + dy, r.w, r.h}; }

}  // namespace sitepack

#endif  // SITEPACK_GEOMETRY_HPP_
