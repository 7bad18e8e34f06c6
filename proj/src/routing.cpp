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

#include "sitepack/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace sitepack {

namespace {

constexpr std::uint8_t kObstacle = 1;
constexpr std::uint8_t kBuffer = 2;
constexpr std::uint8_t kOccupied = 4;
constexpr std::uint8_t kPin = 8;

constexpr Cell kSteps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

Rect intersect(const Rect& a, const Rect& b) {
  const int x0 = std::max(a.x, b.x);
  const int y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.right(), b.right());
  const int y1 = std::min(a.top(), b.top());
  return {x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
}

}  // namespace

std::string_view to_string(OrderingStrategy strategy) {
  switch (strategy) {
    case OrderingStrategy::kMstDfs: return "mst_dfs";
    case OrderingStrategy::kGreedyNearest: return "greedy_nearest";
    case OrderingStrategy::kRandomShuffle: return "random_shuffle";
  }
  return "mst_dfs";
}

OrderingStrategy strategy_for_attempt(int attempt) {
  if (attempt <= 1) return OrderingStrategy::kMstDfs;
  if (attempt == 2) return OrderingStrategy::kGreedyNearest;
  return OrderingStrategy::kRandomShuffle;
}

RoutingState::RoutingState(Rect bounds, int spacing, Cell origin)
    : bounds_(bounds), spacing_(spacing), origin_(origin) {
  if (bounds.empty()) throw Error("routing bounds are empty");
  if (spacing < 0) throw Error("spacing must be >= 0");
  flags_.assign(static_cast<std::size_t>(bounds.area()), 0);
}

std::size_t RoutingState::index(Cell c) const {
  return static_cast<std::size_t>(c.y - bounds_.y) * static_cast<std::size_t>(bounds_.w) +
         static_cast<std::size_t>(c.x - bounds_.x);
}

void RoutingState::add_obstacle(const Rect& rect) {
  const Rect clip = intersect(rect, bounds_);
  for (int y = clip.y; y < clip.top(); ++y) {
    for (int x = clip.x; x < clip.right(); ++x) flags_[index({x, y})] |= kObstacle;
  }
}

void RoutingState::add_obstacle(Cell cell) {
  if (in_bounds(cell)) flags_[index(cell)] |= kObstacle;
}

void RoutingState::add_pin(Cell cell) {
  if (in_bounds(cell)) flags_[index(cell)] |= kPin;
}

bool RoutingState::is_obstacle(Cell c) const { return in_bounds(c) && (flags_[index(c)] & kObstacle); }
bool RoutingState::is_buffer(Cell c) const { return in_bounds(c) && (flags_[index(c)] & kBuffer); }
bool RoutingState::is_occupied(Cell c) const { return in_bounds(c) && (flags_[index(c)] & kOccupied); }
bool RoutingState::is_pin(Cell c) const { return in_bounds(c) && (flags_[index(c)] & kPin); }

bool RoutingState::is_blocked(Cell c) const {
  if (!in_bounds(c)) return true;
  const auto f = flags_[index(c)];
  return !(f & kPin) && (f & (kObstacle | kBuffer));
}

bool RoutingState::passable(Cell c, Cell start, Cell goal) const {
  if (!in_bounds(c)) return false;
  if (c == start || c == goal) return true;
  const auto f = flags_[index(c)];
  if (f & (kObstacle | kOccupied)) return false;
  if (f & kBuffer) return chebyshev(c, start) <= spacing_ || chebyshev(c, goal) <= spacing_;
  return true;
}

void RoutingState::commit(const RoutePath& path) {
  for (const auto& c : path.cells) {
    if (in_bounds(c)) flags_[index(c)] |= kOccupied;
  }
  for (const auto& c : buffer_zone(path, spacing_, this)) {
    if (in_bounds(c)) flags_[index(c)] |= kBuffer;
  }
}

std::optional<RoutePath> astar(Cell start, Cell goal, const RoutingState& state, const Rect& bounds) {
  const Rect area = intersect(bounds, state.bounds());
  if (!area.contains(start) || !area.contains(goal)) return std::nullopt;
  if (!state.passable(start, start, goal) || !state.passable(goal, start, goal)) return std::nullopt;

  const auto width = static_cast<std::size_t>(area.w);
  const auto n = static_cast<std::size_t>(area.area());
  auto idx = [&](Cell c) {
    return static_cast<std::size_t>(c.y - area.y) * width + static_cast<std::size_t>(c.x - area.x);
  };
  auto cell_at = [&](std::size_t i) {
    return Cell{area.x + static_cast<int>(i % width), area.y + static_cast<int>(i / width)};
  };

  constexpr int kUnseen = std::numeric_limits<int>::max();
  constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();
  std::vector<int> g(n, kUnseen);
  std::vector<std::size_t> parent(n, kNoParent);
  std::vector<std::uint8_t> closed(n, 0);

  // (f, h, index): lowest f, then lowest h, then lowest index.
  using Entry = std::tuple<int, int, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const std::size_t s = idx(start);
  const std::size_t t = idx(goal);
  g[s] = 0;
  open.emplace(manhattan(start, goal), manhattan(start, goal), s);

  while (!open.empty()) {
    const auto [f, h, cur] = open.top();
    open.pop();
    if (closed[cur]) continue;
    closed[cur] = 1;
    if (cur == t) break;
    const Cell c = cell_at(cur);
    for (const auto& d : kSteps) {
      const Cell nb{c.x + d.x, c.y + d.y};
      if (!area.contains(nb) || !state.passable(nb, start, goal)) continue;
      const std::size_t ni = idx(nb);
      if (closed[ni]) continue;
      const int ng = g[cur] + 1;
      if (ng < g[ni]) {
        g[ni] = ng;
        parent[ni] = cur;
        const int nh = manhattan(nb, goal);
        open.emplace(ng + nh, nh, ni);
      }
    }
  }
  if (!closed[t]) return std::nullopt;

  RoutePath path;
  path.from = start;
  path.to = goal;
  for (std::size_t i = t; i != kNoParent; i = parent[i]) path.cells.push_back(cell_at(i));
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

namespace {

// Prim over the complete Manhattan graph; node 0 is the origin.
std::vector<Cell> mst_dfs_order(const std::vector<Cell>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<int> key(n, std::numeric_limits<int>::max());
  std::vector<std::size_t> parent(n, 0);
  std::vector<std::uint8_t> in_tree(n, 0);
  key[0] = 0;
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t iter = 0; iter < n; ++iter) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (u == n || key[v] < key[u])) u = v;
    }
    in_tree[u] = 1;
    if (u != 0) children[parent[u]].push_back(u);
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const int d = manhattan(nodes[u], nodes[v]);
      if (d < key[v]) {
        key[v] = d;
        parent[v] = u;
      }
    }
  }
  std::vector<Cell> order;
  order.reserve(n);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    order.push_back(nodes[u]);
    auto kids = children[u];
    std::sort(kids.begin(), kids.end(), [&](std::size_t a, std::size_t b) {
      const int da = manhattan(nodes[u], nodes[a]);
      const int db = manhattan(nodes[u], nodes[b]);
      return da != db ? da < db : a < b;
    });
    // Nearest child is visited first, so push in reverse.
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<Cell> greedy_order(const std::vector<Cell>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<Cell> order{nodes[0]};
  visited[0] = 1;
  std::size_t cur = 0;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (visited[v]) continue;
      if (best == n || manhattan(nodes[cur], nodes[v]) < manhattan(nodes[cur], nodes[best])) best = v;
    }
    visited[best] = 1;
    order.push_back(nodes[best]);
    cur = best;
  }
  return order;
}

}  // namespace

std::vector<Cell> order_pins(std::span<const Cell> pins, Cell origin, OrderingStrategy strategy,
                             std::mt19937_64& rng) {
  std::vector<Cell> nodes{origin};
  nodes.insert(nodes.end(), pins.begin(), pins.end());
  switch (strategy) {
    case OrderingStrategy::kMstDfs: return mst_dfs_order(nodes);
    case OrderingStrategy::kGreedyNearest: return greedy_order(nodes);
    case OrderingStrategy::kRandomShuffle: {
      std::vector<Cell> rest(pins.begin(), pins.end());
      std::shuffle(rest.begin(), rest.end(), rng);
      rest.insert(rest.begin(), origin);
      return rest;
    }
  }
  return nodes;
}

std::vector<Cell> buffer_zone(const RoutePath& path, int spacing, const RoutingState* state) {
  if (spacing < 0) throw Error("spacing must be >= 0");
  std::set<Cell> on_path(path.cells.begin(), path.cells.end());
  std::set<Cell> zone;
  if (spacing == 0) return {};
  for (const auto& c : path.cells) {
    for (int dy = -spacing; dy <= spacing; ++dy) {
      for (int dx = -spacing; dx <= spacing; ++dx) {
        const Cell z{c.x + dx, c.y + dy};
        if (on_path.count(z)) continue;
        if (state && (state->is_obstacle(z) || state->is_pin(z))) continue;
        zone.insert(z);
      }
    }
  }
  return {zone.begin(), zone.end()};
}

Rect routing_bounds(const Layout& layout) {
  return inflate(blocks_bounding_box(layout), layout.grid.spacing + 1);
}

PinSet collect_pins(const Layout& layout, const Rect& bounds) {
  std::vector<Block> sites = layout.sites;
  std::sort(sites.begin(), sites.end(), [](const Block& a, const Block& b) { return a.id < b.id; });
  PinSet out;
  std::size_t first = 0;
  if (layout.controller) {
    out.origin = pin_cell(*layout.controller, bounds);
  } else {
    if (sites.empty()) throw Error("no placed elements");
    out.origin = pin_cell(sites.front(), bounds);
    first = 1;
  }
  std::set<Cell> seen{out.origin};
  for (std::size_t i = first; i < sites.size(); ++i) {
    const Cell p = pin_cell(sites[i], bounds);
    if (seen.insert(p).second) out.pins.push_back(p);
  }
  return out;
}

namespace {

RoutingState make_state(const Layout& layout, const Rect& bounds, const PinSet& pins) {
  RoutingState state(bounds, layout.grid.spacing, pins.origin);
  for (const auto& b : layout.sites) state.add_obstacle(b.rect);
  if (layout.controller) state.add_obstacle(layout.controller->rect);
  state.add_pin(pins.origin);
  for (const auto& p : pins.pins) state.add_pin(p);
  return state;
}

}  // namespace

std::optional<std::vector<RoutePath>> route_in_order(const Layout& layout, std::span<const Cell> order) {
  const Rect bounds = routing_bounds(layout);
  const PinSet pins = collect_pins(layout, bounds);
  RoutingState state = make_state(layout, bounds, pins);
  // A pin swallowed by a block can never be reached.
  if (state.is_obstacle(pins.origin)) return std::nullopt;
  for (const auto& p : pins.pins) {
    if (state.is_obstacle(p)) return std::nullopt;
  }
  // A leg that runs over a pin further down the order connects it on the
  // way; that pin is then skipped rather than routed to again.
  std::vector<RoutePath> routes;
  Cell current = order.empty() ? pins.origin : order.front();
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (state.is_occupied(order[i])) continue;
    auto path = astar(current, order[i], state, bounds);
    if (!path) return std::nullopt;
    state.commit(*path);
    current = order[i];
    routes.push_back(std::move(*path));
  }
  return routes;
}

std::optional<RoutingOutcome> route_all(const Layout& layout, int attempts, std::uint64_t seed) {
  if (attempts < 1) throw Error("routing attempts must be >= 1");
  const Rect bounds = routing_bounds(layout);
  const PinSet pins = collect_pins(layout, bounds);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    const OrderingStrategy strategy = strategy_for_attempt(attempt);
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(attempt));
    const auto order = order_pins(pins.pins, pins.origin, strategy, rng);
    auto routes = route_in_order(layout, order);
    if (routes) return RoutingOutcome{std::move(*routes), order, attempt, strategy};
  }
  return std::nullopt;
}

}  // namespace sitepack
