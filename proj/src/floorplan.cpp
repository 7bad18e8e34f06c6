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

#include "sitepack/floorplan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "sitepack/routing.hpp"

namespace sitepack {

void FloorplanBudget::validate() const {
  if (placement_attempts < 1) throw Error("budget: placement_attempts must be >= 1");
  if (routing_attempts < 1) throw Error("budget: routing_attempts must be >= 1");
  if (time_limit && !(*time_limit > 0.0)) throw Error("budget: time_limit must be positive");
}

std::vector<Block> make_blocks(std::span<const SiteInstance> sites, const std::vector<Template>& library,
                               const GridConfig& grid) {
  std::vector<Block> blocks;
  blocks.reserve(sites.size() + 1);
  for (const auto& s : sites) {
    const Template& t = find_template(library, s.template_id);
    blocks.push_back(Block{s.id, t.id, Rect{0, 0, t.width, t.height}, t.port});
  }
  blocks.push_back(grid.controller_block());
  return blocks;
}

FloorplanResult floorplan(std::span<const SiteInstance> sites, const std::vector<Template>& library,
                          const GridConfig& grid, const FloorplanOptions& options) {
  if (sites.empty()) throw Error("floorplan: no sites");
  grid.validate();
  options.budget.validate();
  for (const auto& t : library) t.validate();

  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  const std::vector<Block> blocks = make_blocks(sites, library, grid);
  const CostParams cost = options.cost.value_or(CostParams::defaults_for(blocks, grid.max_aspect));
  const std::vector<Block> sorted = sort_by_area_desc(blocks);

  FloorplanResult result;
  std::optional<Layout> best;
  long long best_area = 0;

  for (int attempt = 1; attempt <= options.budget.placement_attempts; ++attempt) {
    if (attempt > 1 && options.budget.time_limit && elapsed() > *options.budget.time_limit) break;
    std::vector<Block> order = sorted;
    if (attempt > 1) {
      std::mt19937_64 shuffle_rng(options.seed * 7919ULL + static_cast<std::uint64_t>(attempt));
      std::shuffle(order.begin(), order.end(), shuffle_rng);
    }
    AnnealParams ap = options.anneal;
    ap.rng_seed = options.seed * 104729ULL + static_cast<std::uint64_t>(attempt);
    const AnnealResult placed = anneal(order, grid, ap, cost);

    AttemptRecord record;
    record.attempt = attempt;
    record.placement_cost = placed.cost;
    const auto routed = route_all(placed.layout, options.budget.routing_attempts,
                                  options.seed * 15485863ULL + static_cast<std::uint64_t>(attempt));
    if (routed) {
      Layout layout = placed.layout;
      layout.routes = routed->routes;
      const long long area = compute_bounding_box(layout).area();
      record.routed = true;
      record.area = area;
      record.routing_attempt = routed->attempt;
      if (!best || area < best_area) {
        record.improved = true;
        best = std::move(layout);
        best_area = area;
        result.best_attempt = attempt;
        result.route_order = routed->order;
      }
      result.best_area_trace.push_back(best_area);
    }
    result.log.push_back(record);
  }

  if (!best) throw Error("floorplan failure");
  const Rect box = compute_bounding_box(*best);
  for (auto& c : result.route_order) c = {c.x - box.x, c.y - box.y};
  normalize(*best);
  result.layout = std::move(*best);
  result.metrics = compute_metrics(result.layout, options.record_time ? elapsed() : 0.0);
  return result;
}

void BenchmarkInstance::validate() const {
  if (site_count < 1) throw Error(fmt::format("instance {}: site_count must be >= 1", id));
  if (template_diversity < 1) throw Error(fmt::format("instance {}: template_diversity must be >= 1", id));
  if (static_cast<std::size_t>(template_diversity) > library.size()) {
    throw Error(fmt::format("instance {}: template_diversity {} exceeds library size {}", id,
                            template_diversity, library.size()));
  }
}

std::vector<SiteInstance> make_sites(const BenchmarkInstance& instance) {
  instance.validate();
  std::vector<SiteInstance> sites;
  sites.reserve(static_cast<std::size_t>(instance.site_count));
  for (int i = 0; i < instance.site_count; ++i) {
    const auto& t = instance.library[static_cast<std::size_t>(i % instance.template_diversity)];
    sites.push_back(SiteInstance{i, t.id, std::nullopt});
  }
  return sites;
}

BenchmarkTable run_benchmark(std::span<const BenchmarkInstance> instances, const BenchmarkSettings& settings) {
  BenchmarkTable table;
  std::vector<double> utils;
  for (const auto& inst : instances) {
    BenchmarkRow row;
    row.id = inst.id;
    row.sites = inst.site_count;
    row.diversity = inst.template_diversity;
    try {
      const auto sites = make_sites(inst);
      FloorplanOptions options;
      options.budget = settings.budget;
      options.anneal = settings.anneal;
      options.cost = settings.cost;
      options.seed = inst.seed;
      options.record_time = settings.record_time;
      const auto fp = floorplan(sites, inst.library, settings.grid, options);
      row.metrics = fp.metrics;
      utils.push_back(fp.metrics.util_pct);
    } catch (const Error& e) {
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  if (!utils.empty()) {
    double mean = 0.0;
    for (double u : utils) mean += u;
    mean /= static_cast<double>(utils.size());
    double var = 0.0;
    for (double u : utils) var += (u - mean) * (u - mean);
    table.mean_util = mean;
    table.stddev_util = utils.size() > 1 ? std::sqrt(var / static_cast<double>(utils.size() - 1)) : 0.0;
  }
  return table;
}

namespace {

std::string format_area(double a) {
  if (a == std::floor(a)) return fmt::format("{}", static_cast<long long>(a));
  return fmt::format("{:.1f}", a);
}

}  // namespace

std::string metrics_csv(const BenchmarkTable& table) {
  std::string out = kMetricsCsvHeader;
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.metrics) {
      const Metrics& m = *row.metrics;
      out += fmt::format("{},{},{},{:.2f},{},{},{},{},{:.2f},{:.2f}\n", row.id, row.sites, row.diversity,
                         m.solver_time_s, format_area(m.chip_site_area), format_area(m.track_area),
                         format_area(m.bbox_area), format_area(m.chip_plus_track_area), m.util_pct, m.track_pct);
    } else {
      out += fmt::format("{},{},{},,,,,,,\n", row.id, row.sites, row.diversity);
    }
  }
  return out;
}

}  // namespace sitepack
