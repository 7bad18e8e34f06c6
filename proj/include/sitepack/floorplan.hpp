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

#ifndef SITEPACK_FLOORPLAN_HPP_
#define SITEPACK_FLOORPLAN_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sitepack/core.hpp"
#include "sitepack/metrics.hpp"
#include "sitepack/placement.hpp"

namespace sitepack {

struct FloorplanBudget {
  int placement_attempts = 5;
  int routing_attempts = 3;
  std::optional<double> time_limit;  // seconds; checked between placement attempts

  void validate() const;
};

struct AttemptRecord {
  int attempt = 0;
  bool routed = false;
  bool improved = false;
  long long area = 0;  // bounding box area after routing, 0 if unrouted
  double placement_cost = 0.0;
  int routing_attempt = 0;
};

struct FloorplanResult {
  Layout layout;
  Metrics metrics;
  int best_attempt = 0;
  std::vector<AttemptRecord> log;
  std::vector<long long> best_area_trace;  // best routed area after each routed attempt
  std::vector<Cell> route_order;
};

// Turns site instances into placeable blocks (sizes and ports from the
// library) and appends the controller block from the grid config.
std::vector<Block> make_blocks(std::span<const SiteInstance> sites, const std::vector<Template>& library,
                               const GridConfig& grid);

struct FloorplanOptions {
  FloorplanBudget budget;
  AnnealParams anneal;
  std::optional<CostParams> cost;  // derived from the blocks when absent
  std::uint64_t seed = 1;
  bool record_time = true;  // false pins solver_time_s to 0 for reproducible output
};

// Placement attempts (largest-first order, then seeded shuffles), each
// annealed and then routed; keeps the smallest routed bounding box. Throws
// Error("floorplan failure") if no attempt routes.
FloorplanResult floorplan(std::span<const SiteInstance> sites, const std::vector<Template>& library,
                          const GridConfig& grid, const FloorplanOptions& options);

struct BenchmarkInstance {
  std::string id;
  int site_count = 1;
  int template_diversity = 1;
  std::vector<Template> library;
  std::uint64_t seed = 1;

  void validate() const;
};

// Round-robin template assignment by site id over the first
// `template_diversity` library entries.
std::vector<SiteInstance> make_sites(const BenchmarkInstance& instance);

struct BenchmarkRow {
  std::string id;
  int sites = 0;
  int diversity = 0;
  std::optional<Metrics> metrics;  // absent for a failed instance
  std::string error;
};

struct BenchmarkTable {
  std::vector<BenchmarkRow> rows;
  std::optional<double> mean_util;
  std::optional<double> stddev_util;
};

struct BenchmarkSettings {
  GridConfig grid;
  FloorplanBudget budget;
  AnnealParams anneal;
  std::optional<CostParams> cost;
  bool record_time = true;
};

BenchmarkTable run_benchmark(std::span<const BenchmarkInstance> instances, const BenchmarkSettings& settings);

inline constexpr const char* kMetricsCsvHeader =
    "id,sites,diversity,solver_time_s,chip_area,track_area,bbox_area,chip_track_area,util_pct,track_pct";

std::string metrics_csv(const BenchmarkTable& table);

}  // namespace sitepack

#endif  // SITEPACK_FLOORPLAN_HPP_
