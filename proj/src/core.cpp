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

#include "sitepack/core.hpp"

#include <set>

#include <fmt/format.h>

namespace sitepack {

std::string_view to_string(Side side) {
  switch (side) {
    case Side::kNorth: return "north";
    case Side::kSouth: return "south";
    case Side::kEast: return "east";
    case Side::kWest: return "west";
  }
  return "north";
}

Side side_from_string(std::string_view name) {
  if (name == "north") return Side::kNorth;
  if (name == "south") return Side::kSouth;
  if (name == "east") return Side::kEast;
  if (name == "west") return Side::kWest;
  throw Error(fmt::format("unknown side '{}'", name));
}

Side opposite(Side side) {
  switch (side) {
    case Side::kNorth: return Side::kSouth;
    case Side::kSouth: return Side::kNorth;
    case Side::kEast: return Side::kWest;
    case Side::kWest: return Side::kEast;
  }
  return Side::kNorth;
}

namespace {

int side_length(Side side, int width, int height) {
  return (side == Side::kNorth || side == Side::kSouth) ? width : height;
}

void validate_port(const PortSpec& port, int width, int height, std::string_view what) {
  const int len = side_length(port.side, width, height);
  if (port.length < 1) throw Error(fmt::format("{}: port length must be >= 1", what));
  if (port.offset < 0) throw Error(fmt::format("{}: port offset must be >= 0", what));
  if (port.offset + port.length > len) {
    throw Error(fmt::format("{}: port offset {} + length {} exceeds side length {}", what, port.offset,
                            port.length, len));
  }
}

}  // namespace

void Template::validate() const {
  if (width < 1 || height < 1) {
    throw Error(fmt::format("template {}: dimensions {}x{} must be positive", id, width, height));
  }
  validate_port(port, width, height, fmt::format("template {}", id));
}

const Template& find_template(const std::vector<Template>& library, int id) {
  for (const auto& t : library) {
    if (t.id == id) return t;
  }
  throw Error(fmt::format("unknown template id {}", id));
}

void GridConfig::validate() const {
  if (track_width != 1) throw Error("grid: track_width is normalized to 1");
  if (spacing < 0) throw Error("grid: spacing must be >= 0");
  if (margin_x < 0 || margin_y < 0) throw Error("grid: margins must be >= 0");
  if (!(max_aspect >= 1.0)) throw Error("grid: max_aspect must be >= 1");
  if (outer_bound && (outer_bound->first < 1 || outer_bound->second < 1)) {
    throw Error("grid: outer_bound must be positive");
  }
  if (controller_width < 1 || controller_height < 1) throw Error("grid: controller size must be positive");
  if (!(pitch > 0.0)) throw Error("grid: pitch must be positive");
  validate_port(controller_port, controller_width, controller_height, "controller");
}

Block GridConfig::controller_block() const {
  return Block{kControllerId, kControllerTemplate, Rect{0, 0, controller_width, controller_height},
               controller_port};
}

std::vector<Block> Layout::blocks() const {
  std::vector<Block> out = sites;
  if (controller) out.push_back(*controller);
  return out;
}

Rect blocks_bounding_box(const Layout& layout) {
  std::optional<Rect> box;
  auto add = [&](const Rect& r) { box = box ? unite(*box, r) : r; };
  for (const auto& b : layout.sites) add(b.rect);
  if (layout.controller) add(layout.controller->rect);
  if (!box) throw Error("no placed elements");
  return *box;
}

Rect compute_bounding_box(const Layout& layout) {
  std::optional<Rect> box;
  auto add = [&](const Rect& r) { box = box ? unite(*box, r) : r; };
  for (const auto& b : layout.sites) add(b.rect);
  if (layout.controller) add(layout.controller->rect);
  for (const auto& route : layout.routes) {
    for (const auto& c : route.cells) add(Rect{c.x, c.y, 1, 1});
  }
  if (!box) throw Error("no placed elements");
  return *box;
}

Cell pin_cell(const Block& block, const std::optional<Rect>& bounds) {
  const Rect& r = block.rect;
  const int along = block.port.offset + block.port.length / 2;
  Cell pin;
  switch (block.port.side) {
    case Side::kNorth: pin = {r.x + along, r.top()}; break;
    case Side::kSouth: pin = {r.x + along, r.y - 1}; break;
    case Side::kEast: pin = {r.right(), r.y + along}; break;
    case Side::kWest: pin = {r.x - 1, r.y + along}; break;
  }
  const bool inside = bounds ? bounds->contains(pin) : (pin.x >= 0 && pin.y >= 0);
  if (!inside) {
    throw Error(fmt::format("pin of block {} at ({},{}) faces the grid boundary", block.id, pin.x, pin.y));
  }
  return pin;
}

Rect footprint(const Block& block, const GridConfig& grid) {
  Rect f = block.rect;
  const int c = grid.port_clearance();
  switch (block.port.side) {
    case Side::kNorth: f.h += c; break;
    case Side::kSouth: f.y -= c; f.h += c; break;
    case Side::kEast: f.w += c; break;
    case Side::kWest: f.x -= c; f.w += c; break;
  }
  f.w += grid.margin_x;
  f.h += grid.margin_y;
  return f;
}

void normalize(Layout& layout) {
  const Rect box = compute_bounding_box(layout);
  const int dx = -box.x;
  const int dy = -box.y;
  if (dx == 0 && dy == 0) return;
  for (auto& b : layout.sites) b.rect = translate(b.rect, dx, dy);
  if (layout.controller) layout.controller->rect = translate(layout.controller->rect, dx, dy);
  for (auto& route : layout.routes) {
    for (auto& c : route.cells) c = {c.x + dx, c.y + dy};
    route.from = {route.from.x + dx, route.from.y + dy};
    route.to = {route.to.x + dx, route.to.y + dy};
  }
}

void check_unique_ids(const Layout& layout) {
  std::set<int> seen;
  for (const auto& b : layout.sites) {
    if (b.id < 0) throw Error(fmt::format("site id {} is negative", b.id));
    if (!seen.insert(b.id).second) throw Error(fmt::format("duplicate site id {}", b.id));
  }
}

}  // namespace sitepack
