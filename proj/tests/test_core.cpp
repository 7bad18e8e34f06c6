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

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sitepack/core.hpp"
#include "sitepack/metrics.hpp"
#include "reference_rows.hpp"

using namespace sitepack;

namespace {

Block site(int id, Rect r, PortSpec port = {Side::kNorth, 0, 1}) { return {id, 0, r, port}; }

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("bounding box of one site is the site") {
    Layout l;
    l.sites.push_back(site(0, {0, 0, 92, 92}));
    CHECK(compute_bounding_box(l) == Rect{0, 0, 92, 92});
  }

  TEST_CASE("bounding box unites two rects") {
    Layout l;
    l.sites.push_back(site(0, {0, 0, 10, 10}));
    l.sites.push_back(site(1, {20, 0, 10, 10}));
    const Rect b = compute_bounding_box(l);
    CHECK(b == Rect{0, 0, 30, 10});
    CHECK(b.area() == 300);
  }

  TEST_CASE("empty layout has no bounding box") {
    Layout l;
    CHECK_THROWS_WITH_AS(compute_bounding_box(l), "no placed elements", Error);
  }

  TEST_CASE("bounding box matches a cell scan and only grows") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> pos(0, 60), dim(1, 25);
    for (int trial = 0; trial < 100; ++trial) {
      Layout l;
      l.controller = Block{kControllerId, kControllerTemplate, {pos(rng), pos(rng), dim(rng), dim(rng)}, {}};
      std::optional<Rect> prev;
      for (int i = 0; i < 6; ++i) {
        l.sites.push_back(site(i, {pos(rng), pos(rng), dim(rng), dim(rng)}));
        if (i % 2 == 0) l.routes.push_back({{Cell{pos(rng) - 5, pos(rng) + 70}}, {}, {}});
        const Rect b = compute_bounding_box(l);
        CHECK(b == *oracle::bbox_scan(l));
        if (prev) CHECK(unite(*prev, b) == b);
        prev = b;
      }
    }
  }

  TEST_CASE("overlap excludes abutment and agrees with cell sets") {
    CHECK_FALSE(overlaps({0, 0, 10, 10}, {10, 0, 10, 10}));
    CHECK(overlaps({0, 0, 10, 10}, {5, 5, 10, 10}));
    CHECK_FALSE(overlaps({3, 3, 0, 5}, {3, 3, 0, 5}));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pos(0, 12), dim(0, 6);
    for (int i = 0; i < 500; ++i) {
      const Rect a{pos(rng), pos(rng), dim(rng), dim(rng)};
      const Rect b{pos(rng), pos(rng), dim(rng), dim(rng)};
      const auto ca = oracle::cells_of(a), cb = oracle::cells_of(b);
      const bool shared = std::any_of(ca.begin(), ca.end(), [&](Cell c) { return cb.count(c) > 0; });
      CHECK(overlaps(a, b) == shared);
      CHECK(overlaps(a, b) == overlaps(b, a));
    }
  }

  TEST_CASE("pin sits just outside the port midpoint") {
    const Block b = site(0, {0, 0, 10, 10}, {Side::kNorth, 4, 2});
    CHECK(pin_cell(b) == Cell{5, 10});
    CHECK(pin_cell(site(0, {0, 0, 10, 10}, {Side::kEast, 4, 2})) == Cell{10, 5});
    CHECK(pin_cell(site(0, {3, 3, 10, 10}, {Side::kWest, 4, 3})) == Cell{2, 8});
    CHECK_THROWS_AS(pin_cell(site(0, {0, 0, 10, 10}, {Side::kSouth, 4, 2})), Error);
    CHECK(pin_cell(site(0, {0, 0, 10, 10}, {Side::kSouth, 4, 2}), Rect{-5, -5, 30, 30}) == Cell{5, -1});
  }

  TEST_CASE("pin cell is translation equivariant") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> d(0, 40);
    for (int i = 0; i < 200; ++i) {
      const Side side = static_cast<Side>(i % 4);
      Block b = site(0, {d(rng) + 5, d(rng) + 5, 12, 9}, {side, 2, 3});
      const Cell p = pin_cell(b);
      const int dx = d(rng), dy = d(rng);
      b.rect = translate(b.rect, dx, dy);
      CHECK(pin_cell(b) == Cell{p.x + dx, p.y + dy});
    }
  }

  TEST_CASE("templates validate their port") {
    Template t{0, 10, 10, {Side::kNorth, 8, 2}};
    CHECK_NOTHROW(t.validate());
    t.port.offset = 9;
    CHECK_THROWS_AS(t.validate(), Error);
    Template z{1, 0, 4, {}};
    CHECK_THROWS_AS(z.validate(), Error);
  }

  TEST_CASE("grid config invariants") {
    GridConfig g;
    CHECK_NOTHROW(g.validate());
    g.spacing = -1;
    CHECK_THROWS_AS(g.validate(), Error);
    g = {};
    g.max_aspect = 0.5;
    CHECK_THROWS_AS(g.validate(), Error);
    g = {};
    g.margin_y = -2;
    CHECK_THROWS_AS(g.validate(), Error);
  }

  TEST_CASE("normalize moves the bbox corner to the origin") {
    Layout l;
    l.sites.push_back(site(0, {7, 9, 4, 4}));
    l.routes.push_back({{Cell{5, 9}, Cell{6, 9}}, Cell{5, 9}, Cell{6, 9}});
    normalize(l);
    CHECK(compute_bounding_box(l) == Rect{0, 0, 6, 4});
    CHECK(l.routes[0].cells.front() == Cell{0, 0});
  }

  TEST_CASE("metrics follow their definitions") {
    const Metrics m = metrics_from_areas(100, 0, 100, 0.0);
    CHECK(m.util_pct == 100.0);
    CHECK(m.track_pct == 0.0);
    CHECK_THROWS_AS(metrics_from_areas(1, 1, 0, 0.0), Error);
    const Metrics p1 = metrics_from_areas(50784, 470, 51985, 0.0);
    CHECK(p1.chip_plus_track_area == 51254);
    CHECK(p1.util_pct == doctest::Approx(98.59).epsilon(1e-12));
    CHECK(p1.track_pct == doctest::Approx(0.90).epsilon(1e-12));
    const Metrics p22 = metrics_from_areas(932147, 21198, 1175134, 0.0);
    CHECK(p22.util_pct == doctest::Approx(81.13).epsilon(1e-12));
    CHECK(p22.track_pct == doctest::Approx(1.80).epsilon(1e-12));
  }

  TEST_CASE("metric arithmetic reproduces every published row") {
    for (const auto& row : testdata::kReferenceRows) {
      CAPTURE(row.id);
      const Metrics m = metrics_from_areas(row.chip, row.track, row.bbox, row.solver_time_s);
      CHECK(m.chip_plus_track_area == row.chip_plus_track);
      CHECK(std::abs(m.util_pct - row.util_pct) < 1e-9);
      CHECK(std::abs(m.track_pct - row.track_pct) < 1e-9);
    }
  }

  TEST_CASE("round2 is half-up") {
    CHECK(round2(1.005000001) == doctest::Approx(1.01));
    CHECK(round2(2.344) == doctest::Approx(2.34));
    CHECK(round2(0.125) == doctest::Approx(0.13));
  }

  TEST_CASE("layout metrics count the controller and unique route cells") {
    Layout l;
    l.sites.push_back(site(0, {0, 0, 10, 10}));
    l.controller = Block{kControllerId, kControllerTemplate, {10, 0, 10, 10}, {}};
    l.routes.push_back({{Cell{0, 10}, Cell{1, 10}, Cell{2, 10}}, {}, {}});
    l.routes.push_back({{Cell{2, 10}, Cell{3, 10}}, {}, {}});
    CHECK(chip_area(l) == 200);
    CHECK(track_cell_count(l) == 4);
    const Metrics m = compute_metrics(l, 0.0);
    CHECK(m.bbox_area == 220);
    CHECK(m.chip_plus_track_area == 204);
  }

  TEST_CASE("unique ids are enforced") {
    Layout l;
    l.sites.push_back(site(0, {0, 0, 1, 1}));
    l.sites.push_back(site(0, {5, 0, 1, 1}));
    CHECK_THROWS_AS(check_unique_ids(l), Error);
  }
}
