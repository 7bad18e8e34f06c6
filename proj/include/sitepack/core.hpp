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

#ifndef SITEPACK_CORE_HPP_
#define SITEPACK_CORE_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sitepack/geometry.hpp"

namespace sitepack {

// Raised for contract violations and solver failures across the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side { kNorth, kSouth, kEast, kWest };

std::string_view to_string(Side side);
Side side_from_string(std::string_view name);
Side opposite(Side side);

struct PortSpec {
  Side side = Side::kNorth;
  int offset = 0;  // tracks from the side origin (left for N/S, bottom for E/W)
  int length = 1;

  bool operator==(const PortSpec&) const = default;
};

// A reusable, pre-verified chip-site footprint in track units.
struct Template {
  int id = 0;
  int width = 1;
  int height = 1;
  PortSpec port;

  long long area() const { return static_cast<long long>(width) * height; }
  // Throws Error describing the first broken invariant.
  void validate() const;
};

const Template& find_template(const std::vector<Template>& library, int id);

// Chip address of the site doubles as its identifier; ids are dense 0..N-1.
struct SiteInstance {
  int id = 0;
  int template_id = 0;
  std::optional<Cell> position;
};

inline constexpr int kControllerId = -1;
inline constexpr int kControllerTemplate = -1;

// A concrete rectangle on the grid with one port. Sites and the controller
// share this representation.
struct Block {
  int id = 0;
  int template_id = 0;
  Rect rect;
  PortSpec port;

  bool is_controller() const { return id == kControllerId; }
  bool operator==(const Block&) const = default;
};

struct GridConfig {
  int track_width = 1;  // normalized; every dimension is a multiple of it
  int spacing = 0;
  int margin_x = 2;
  int margin_y = 2;
  double max_aspect = 2.0;
  std::optional<std::pair<int, int>> outer_bound;
  int controller_width = 92;
  int controller_height = 92;
  PortSpec controller_port{Side::kNorth, 45, 2};
  double pitch = 1.0;  // physical set-to-set pitch per track, applied at export only

  void validate() const;
  // Empty tracks kept free on a block's port side. At least one, so the pin
  // cell itself is never covered.
  int port_clearance() const { return spacing > 1 ? spacing : 1; }
  Block controller_block() const;
};

struct RoutePath {
  std::vector<Cell> cells;
  Cell from;
  Cell to;

  int steps() const { return cells.empty() ? 0 : static_cast<int>(cells.size()) - 1; }
  bool operator==(const RoutePath&) const = default;
};

struct Layout {
  std::vector<Block> sites;
  std::optional<Block> controller;
  std::vector<RoutePath> routes;
  GridConfig grid;

  // Sites followed by the controller, if present.
  std::vector<Block> blocks() const;
};

// Smallest rectangle enclosing sites, controller and route cells.
Rect compute_bounding_box(const Layout& layout);

// Bounding box over blocks only (sites and controller), ignoring routes.
Rect blocks_bounding_box(const Layout& layout);

// The routing cell just outside the midpoint of the port segment. Without
// explicit bounds the grid is the non-negative quadrant.
Cell pin_cell(const Block& block, const std::optional<Rect>& bounds = std::nullopt);

// Keep-out region of a placed block: the block plus its port-side clearance,
// margin_x on the right and margin_y on top.
Rect footprint(const Block& block, const GridConfig& grid);

// Shifts everything so the bounding box lower-left corner sits at (0,0).
void normalize(Layout& layout);

// Block id -> rectangle lookups assume ids are unique; throws otherwise.
void check_unique_ids(const Layout& layout);

}  // namespace sitepack

#endif  // SITEPACK_CORE_HPP_
