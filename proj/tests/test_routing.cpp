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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "sitepack/placement.hpp"
#include "sitepack/routing.hpp"

using namespace sitepack;

namespace {

RoutingState open_state(Rect bounds, int spacing = 0) { return RoutingState(bounds, spacing, {bounds.x, bounds.y}); }

RoutePath straight(std::initializer_list<Cell> cells) {
  RoutePath p;
  p.cells = cells;
  p.from = p.cells.front();
  p.to = p.cells.back();
  return p;
}

Layout two_sites(int gap) {
  Layout l;
  l.grid.spacing = 1;
  l.sites.push_back({0, 0, {0, 0, 10, 10}, {Side::kNorth, 4, 2}});
  l.sites.push_back({1, 0, {10 + gap, 0, 10, 10}, {Side::kNorth, 4, 2}});
  return l;
}

Layout random_placed(std::mt19937_64& rng, int n, int spacing) {
  std::uniform_int_distribution<int> dim(4, 20), side(0, 3);
  std::vector<Block> blocks;
  for (int i = 0; i < n; ++i) {
    Block b{i, i, {0, 0, dim(rng), dim(rng)}, {}};
    b.port = {static_cast<Side>(side(rng)), 0, 1};
    blocks.push_back(b);
  }
  GridConfig g;
  g.spacing = spacing;
  g.max_aspect = 1e9;
  return skyline_candidates(sort_by_area_desc(blocks), g).layout;
}

}  // namespace

TEST_SUITE("routing") {
  TEST_CASE("open grid path is Manhattan length") {
    const Rect bounds{0, 0, 10, 10};
    const auto state = open_state(bounds);
    const auto p = astar({0, 0}, {3, 4}, state, bounds);
    REQUIRE(p);
    CHECK(p->steps() == 7);
    CHECK(p->cells.size() == 8);
    CHECK(p->cells.front() == Cell{0, 0});
    CHECK(p->cells.back() == Cell{3, 4});
  }

  TEST_CASE("walled goal is unreachable") {
    const Rect bounds{0, 0, 10, 10};
    auto state = open_state(bounds);
    for (Cell c : {Cell{4, 5}, Cell{6, 5}, Cell{5, 4}, Cell{5, 6}}) state.add_obstacle(c);
    CHECK_FALSE(astar({0, 0}, {5, 5}, state, bounds).has_value());
  }

  TEST_CASE("start equals goal") {
    const Rect bounds{0, 0, 3, 3};
    const auto p = astar({1, 1}, {1, 1}, open_state(bounds), bounds);
    REQUIRE(p);
    CHECK(p->steps() == 0);
  }

  TEST_CASE("A* matches the BFS oracle on random obstacle grids") {
    std::mt19937_64 rng(2024);
    const Rect bounds{0, 0, 50, 50};
    std::bernoulli_distribution block(0.2);
    std::uniform_int_distribution<int> coord(0, 49);
    int solvable = 0;
    for (int trial = 0; trial < 200; ++trial) {
      auto state = open_state(bounds);
      std::set<Cell> blocked;
      const Cell s{coord(rng), coord(rng)}, t{coord(rng), coord(rng)};
      for (int x = 0; x < 50; ++x)
        for (int y = 0; y < 50; ++y) {
          const Cell c{x, y};
          if (c == s || c == t || !block(rng)) continue;
          state.add_obstacle(c);
          blocked.insert(c);
        }
      const int want = oracle::bfs_steps(s, t, bounds, blocked);
      const auto got = astar(s, t, state, bounds);
      CHECK(got.has_value() == (want >= 0));
      if (got) {
        ++solvable;
        CHECK(got->steps() == want);
        for (std::size_t i = 1; i < got->cells.size(); ++i) CHECK(manhattan(got->cells[i], got->cells[i - 1]) == 1);
        for (Cell c : got->cells) CHECK_FALSE(blocked.count(c));
      }
    }
    CHECK(solvable > 100);
  }

  TEST_CASE("greedy nearest visits collinear pins in order") {
    std::mt19937_64 rng(1);
    const std::vector<Cell> pins{{20, 0}, {10, 0}};
    const auto order = order_pins(pins, {0, 0}, OrderingStrategy::kGreedyNearest, rng);
    CHECK(order == std::vector<Cell>{{0, 0}, {10, 0}, {20, 0}});
  }

  TEST_CASE("single pin under every strategy") {
    std::mt19937_64 rng(1);
    const std::vector<Cell> pins{{5, 5}};
    for (auto s : {OrderingStrategy::kMstDfs, OrderingStrategy::kGreedyNearest, OrderingStrategy::kRandomShuffle})
      CHECK(order_pins(pins, {0, 0}, s, rng) == std::vector<Cell>{{0, 0}, {5, 5}});
  }

  TEST_CASE("MST-DFS tour stays within twice the MST weight") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coord(0, 100);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Cell> pins;
      for (int i = 0; i < 6; ++i) pins.push_back({coord(rng), coord(rng)});
      const Cell origin{coord(rng), coord(rng)};
      const auto order = order_pins(pins, origin, OrderingStrategy::kMstDfs, rng);
      REQUIRE(order.size() == 7);
      CHECK(order.front() == origin);
      long long tour = 0;
      for (std::size_t i = 1; i < order.size(); ++i) tour += manhattan(order[i - 1], order[i]);
      std::vector<Cell> all = pins;
      all.push_back(origin);
      CHECK(tour <= 2 * oracle::mst_weight(all));
    }
  }

  TEST_CASE("every strategy yields a permutation with the origin first") {
    std::mt19937_64 rng(4);
    const std::vector<Cell> pins{{1, 2}, {9, 9}, {4, 0}, {7, 3}};
    for (auto s : {OrderingStrategy::kMstDfs, OrderingStrategy::kGreedyNearest, OrderingStrategy::kRandomShuffle}) {
      auto order = order_pins(pins, {0, 0}, s, rng);
      CHECK(order.front() == Cell{0, 0});
      order.erase(order.begin());
      std::sort(order.begin(), order.end());
      auto want = pins;
      std::sort(want.begin(), want.end());
      CHECK(order == want);
    }
  }

  TEST_CASE("strategy ladder") {
    CHECK(strategy_for_attempt(1) == OrderingStrategy::kMstDfs);
    CHECK(strategy_for_attempt(2) == OrderingStrategy::kGreedyNearest);
    CHECK(strategy_for_attempt(3) == OrderingStrategy::kRandomShuffle);
    CHECK(strategy_for_attempt(9) == OrderingStrategy::kRandomShuffle);
  }

  TEST_CASE("buffer zone examples") {
    const auto p = straight({{5, 5}, {6, 5}, {7, 5}});
    CHECK(buffer_zone(p, 0).empty());
    const auto zone = buffer_zone(p, 1);
    CHECK(zone.size() == 12);
    std::set<Cell> brute;
    for (int x = 0; x < 15; ++x)
      for (int y = 0; y < 15; ++y) {
        const Cell c{x, y};
        if (std::find(p.cells.begin(), p.cells.end(), c) != p.cells.end()) continue;
        for (Cell q : p.cells)
          if (chebyshev(c, q) <= 1) brute.insert(c);
      }
    CHECK(std::set<Cell>(zone.begin(), zone.end()) == brute);
  }

  TEST_CASE("buffer zone skips pins and block interiors") {
    const Rect bounds{0, 0, 20, 20};
    auto state = open_state(bounds, 2);
    state.add_pin({5, 7});
    state.add_obstacle(Rect{8, 3, 3, 3});
    const auto p = straight({{5, 5}, {6, 5}, {7, 5}});
    const auto zone = buffer_zone(p, 2, &state);
    CHECK(std::find(zone.begin(), zone.end(), Cell{5, 7}) == zone.end());
    for (Cell c : zone) CHECK_FALSE(state.is_obstacle(c));
    CHECK(zone.size() == 35 - 3 - 1 - 6);
  }

  TEST_CASE("committed paths block later legs but never pins") {
    const Rect bounds{0, 0, 20, 20};
    auto state = open_state(bounds, 1);
    state.add_pin({6, 6});
    state.commit(straight({{5, 5}, {6, 5}, {7, 5}}));
    CHECK(state.is_occupied({6, 5}));
    CHECK(state.is_buffer({6, 4}));
    CHECK(state.is_blocked({6, 4}));
    CHECK_FALSE(state.is_blocked({6, 6}));
  }

  TEST_CASE("two open sites route on the first attempt") {
    const auto l = two_sites(6);
    const auto r = route_all(l, 3, 1);
    REQUIRE(r);
    CHECK(r->attempt == 1);
    CHECK(r->routes.size() == 1);
  }

  TEST_CASE("controller plus two sites yields two legs") {
    auto l = two_sites(6);
    Block c = l.grid.controller_block();
    c.rect = {0, 20, 10, 10};
    c.port = {Side::kSouth, 4, 2};
    l.controller = c;
    const auto r = route_all(l, 3, 1);
    REQUIRE(r);
    CHECK(r->routes.size() == 2);
  }

  TEST_CASE("boxed-in pin cannot be routed") {
    Layout l;
    l.grid.spacing = 0;
    l.sites.push_back({0, 0, {0, 0, 5, 5}, {Side::kNorth, 0, 1}});
    l.sites.push_back({1, 0, {20, 20, 3, 3}, {Side::kNorth, 0, 1}});
    // Walls around site 1's pin cell at (20, 23).
    l.sites.push_back({2, 0, {19, 24, 3, 1}, {Side::kNorth, 0, 1}});
    l.sites.push_back({3, 0, {18, 23, 2, 1}, {Side::kNorth, 0, 1}});
    l.sites.push_back({4, 0, {21, 23, 2, 1}, {Side::kNorth, 0, 1}});
    CHECK_FALSE(route_all(l, 3, 1).has_value());
  }

  TEST_CASE("routes are legal, connected and deterministic") {
    std::mt19937_64 rng(31);
    int routed = 0;
    for (int trial = 0; trial < 40; ++trial) {
      const int spacing = trial % 3;
      Layout l = random_placed(rng, 2 + trial % 7, spacing);
      const auto a = route_all(l, 2, 5);
      const auto b = route_all(l, 2, 5);
      REQUIRE(a.has_value() == b.has_value());
      if (!a) continue;
      ++routed;
      CHECK(a->routes == b->routes);
      l.routes = a->routes;
      const auto v = oracle::check_routes(l);
      CHECK_MESSAGE(v.clean(), (v.notes.empty() ? "" : v.notes.front()));
      const auto pins = collect_pins(l, routing_bounds(l));
      CHECK(oracle::routes_connect(l, pins.pins, pins.origin));
      std::set<Cell> on_route;
      std::multiset<Cell> goals;
      for (const auto& leg : a->routes) {
        on_route.insert(leg.cells.begin(), leg.cells.end());
        goals.insert(leg.to);
      }
      for (Cell p : pins.pins) {
        CHECK(on_route.count(p) == 1);
        CHECK(goals.count(p) <= 1);
      }
    }
    CHECK(routed >= 30);
  }

  TEST_CASE("any successful visiting order connects the same pins") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
      Layout l = random_placed(rng, 5, 1);
      const auto pins = collect_pins(l, routing_bounds(l));
      std::vector<Cell> order{pins.origin};
      order.insert(order.end(), pins.pins.begin(), pins.pins.end());
      for (int k = 0; k < 4; ++k) {
        std::shuffle(order.begin() + 1, order.end(), rng);
        const auto legs = route_in_order(l, order);
        if (!legs) continue;
        Layout routed = l;
        routed.routes = *legs;
        CHECK(oracle::routes_connect(routed, pins.pins, pins.origin));
      }
    }
  }
}
