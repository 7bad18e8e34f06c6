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

#ifndef SITEPACK_ROUTING_HPP_
#define SITEPACK_ROUTING_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "sitepack/core.hpp"

namespace sitepack {

enum class OrderingStrategy { kMstDfs, kGreedyNearest, kRandomShuffle };

std::string_view to_string(OrderingStrategy strategy);

// Strategy used by routing attempt k (1-based): MST-DFS, then greedy nearest
// neighbour, then random shuffles.
OrderingStrategy strategy_for_attempt(int attempt);

// Dense bookkeeping over a bounded window of the grid. Block interiors are
// static obstacles; buffer cells come from already routed paths. Pin cells
// are never blocked.
class RoutingState {
 public:
  RoutingState(Rect bounds, int spacing, Cell origin);

  const Rect& bounds() const { return bounds_; }
  int spacing() const { return spacing_; }
  Cell origin() const { return origin_; }

  void add_obstacle(const Rect& rect);
  void add_obstacle(Cell cell);
  void add_pin(Cell cell);

  bool in_bounds(Cell c) const { return bounds_.contains(c); }
  bool is_obstacle(Cell c) const;
  bool is_buffer(Cell c) const;
  bool is_occupied(Cell c) const;
  bool is_pin(Cell c) const;
  // Union of obstacles and buffer cells, minus pins.
  bool is_blocked(Cell c) const;

  // Whether a leg from `start` to `goal` may step on `c`. Buffer cells within
  // `spacing` of either endpoint stay open so consecutive legs can meet.
  bool passable(Cell c, Cell start, Cell goal) const;

  // Marks path cells occupied and its buffer zone blocked.
  void commit(const RoutePath& path);

 private:
  std::size_t index(Cell c) const;

  Rect bounds_;
  int spacing_;
  Cell origin_;
  std::vector<std::uint8_t> flags_;
};

// Shortest 4-connected path between two cells under `state` and `bounds`,
// Manhattan heuristic. nullopt when unreachable.
std::optional<RoutePath> astar(Cell start, Cell goal, const RoutingState& state, const Rect& bounds);

// Visiting order with the origin first.
std::vector<Cell> order_pins(std::span<const Cell> pins, Cell origin, OrderingStrategy strategy,
                             std::mt19937_64& rng);

// Cells within Chebyshev distance `spacing` of the path, excluding path cells.
// With a state, obstacle and pin cells are excluded as well. Sorted.
std::vector<Cell> buffer_zone(const RoutePath& path, int spacing, const RoutingState* state = nullptr);

struct RoutingOutcome {
  std::vector<RoutePath> routes;
  std::vector<Cell> order;
  int attempt = 0;
  OrderingStrategy strategy = OrderingStrategy::kMstDfs;
};

// Origin pin (the controller's, else the lowest site id's) plus one pin per
// other block, deduplicated, in site-id order.
struct PinSet {
  Cell origin;
  std::vector<Cell> pins;
};
PinSet collect_pins(const Layout& layout, const Rect& bounds);

// Window searched by the router: the blocks' bounding box grown by spacing+1.
Rect routing_bounds(const Layout& layout);

// Daisy-chains every pin starting at the origin, retrying up to `attempts`
// times along the strategy ladder. nullopt when every attempt fails.
std::optional<RoutingOutcome> route_all(const Layout& layout, int attempts, std::uint64_t seed);

// Routes a fixed visiting order (origin first); used by route_all per attempt.
std::optional<std::vector<RoutePath>> route_in_order(const Layout& layout, std::span<const Cell> order);

}  // namespace sitepack

#endif  // SITEPACK_ROUTING_HPP_
