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
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sitepack/config.hpp"
#include "sitepack/floorplan.hpp"
#include "sitepack/routing.hpp"

using namespace sitepack;

namespace {

BenchmarkInstance benchmark_instance_of(const std::string& id, int sites, int diversity, std::uint64_t seed = 1) {
  return {id, sites, diversity, benchmark_templates(), seed};
}

FloorplanResult run(const BenchmarkInstance& inst, FloorplanOptions opt = {}) {
  opt.record_time = false;
  opt.seed = inst.seed;
  return floorplan(make_sites(inst), inst.library, GridConfig{}, opt);
}

void check_legal(const FloorplanResult& r) {
  const auto p = oracle::check_placement(r.layout);
  CHECK_MESSAGE(p.clean(), (p.notes.empty() ? "" : p.notes.front()));
  const auto q = oracle::check_routes(r.layout);
  CHECK_MESSAGE(q.clean(), (q.notes.empty() ? "" : q.notes.front()));
  const auto pins = collect_pins(r.layout, routing_bounds(r.layout));
  CHECK(oracle::routes_connect(r.layout, pins.pins, pins.origin));
}

}  // namespace

TEST_SUITE("floorplan") {
  TEST_CASE("single site with the controller") {
    FloorplanOptions opt;
    opt.budget.placement_attempts = 1;
    const auto r = run(benchmark_instance_of("one", 1, 1), opt);
    CHECK(r.layout.sites.size() == 1);
    REQUIRE(r.layout.controller);
    CHECK(r.layout.routes.size() == 1);
    CHECK(r.metrics.util_pct >= 90.0);
    check_legal(r);
  }

  TEST_CASE("P1-shaped instance") {
    const auto r = run(benchmark_instance_of("P1", 5, 1));
    CHECK(r.metrics.util_pct >= 90.0);
    CHECK(r.metrics.track_pct >= 0.1);
    CHECK(r.metrics.track_pct <= 3.0);
    check_legal(r);
  }

  TEST_CASE("best area over attempts never rises") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto r = run(benchmark_instance_of("P2", 10, 2, seed));
      REQUIRE_FALSE(r.best_area_trace.empty());
      for (std::size_t i = 1; i < r.best_area_trace.size(); ++i)
        CHECK(r.best_area_trace[i] <= r.best_area_trace[i - 1]);
      CHECK(r.best_area_trace.back() == compute_bounding_box(r.layout).area());
      int routed = 0;
      for (const auto& rec : r.log) routed += rec.routed;
      CHECK(static_cast<std::size_t>(routed) == r.best_area_trace.size());
      CHECK(r.log.size() == 5);
    }
  }

  TEST_CASE("returned layouts are legal across sizes and seeds") {
    for (int sites : {2, 3, 7, 12})
      for (std::uint64_t seed : {4u, 9u}) check_legal(run(benchmark_instance_of("x", sites, 3, seed)));
  }

  TEST_CASE("empty benchmark") {
    const auto t = run_benchmark({}, {});
    CHECK(t.rows.empty());
    CHECK_FALSE(t.mean_util.has_value());
    CHECK_FALSE(t.stddev_util.has_value());
    CHECK(metrics_csv(t) == std::string(kMetricsCsvHeader) + "\n");
  }

  TEST_CASE("benchmark CSV shape and determinism") {
    const std::vector<BenchmarkInstance> set{benchmark_instance_of("P1", 5, 1), benchmark_instance_of("P2", 10, 2),
                                             benchmark_instance_of("P3", 20, 3)};
    BenchmarkSettings s;
    s.record_time = false;
    const auto a = run_benchmark(set, s);
    const auto b = run_benchmark(set, s);
    const std::string csv = metrics_csv(a);
    CHECK(csv == metrics_csv(b));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == kMetricsCsvHeader);
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
    for (const auto& row : a.rows) {
      REQUIRE(row.metrics);
      CHECK(row.metrics->util_pct >= 75.0);
    }
    REQUIRE(a.mean_util);
    REQUIRE(a.stddev_util);
  }

  TEST_CASE("failed instances become failed rows") {
    BenchmarkSettings s;
    s.record_time = false;
    s.grid.outer_bound = std::pair{100, 100};
    const std::vector<BenchmarkInstance> set{benchmark_instance_of("tiny", 3, 1)};
    const auto t = run_benchmark(set, s);
    REQUIRE(t.rows.size() == 1);
    CHECK_FALSE(t.rows[0].metrics.has_value());
    CHECK_FALSE(t.rows[0].error.empty());
  }

  TEST_CASE("round-robin template assignment") {
    const auto sites = make_sites(benchmark_instance_of("rr", 7, 3));
    REQUIRE(sites.size() == 7);
    for (int i = 0; i < 7; ++i) {
      CHECK(sites[static_cast<std::size_t>(i)].id == i);
      CHECK(sites[static_cast<std::size_t>(i)].template_id == i % 3);
    }
  }

  TEST_CASE("budget and instance validation") {
    FloorplanBudget b;
    b.placement_attempts = 0;
    CHECK_THROWS_AS(b.validate(), Error);
    CHECK_THROWS_AS(benchmark_instance_of("bad", 3, 6).validate(), Error);
    CHECK_THROWS_AS(floorplan({}, benchmark_templates(), GridConfig{}, {}), Error);
  }
}
