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

#include "sitepack/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "sitepack/metrics.hpp"

namespace sitepack {

Skyline::Skyline(int width) : width_(width) {
  if (width < 1) throw Error(fmt::format("skyline width {} must be positive", width));
  segments_.push_back({0, width, 0});
}

int Skyline::rest_height(int x, int w) const {
  int h = 0;
  for (const auto& s : segments_) {
    if (s.x_end <= x) continue;
    if (s.x_start >= x + w) break;
    h = std::max(h, s.height);
  }
  return h;
}

std::optional<Cell> Skyline::lowest_position(int w) const {
  if (w > width_) return std::nullopt;
  std::optional<Cell> best;
  for (const auto& s : segments_) {
    if (s.x_start + w > width_) break;
    const int y = rest_height(s.x_start, w);
    if (!best || y < best->y) best = Cell{s.x_start, y};
  }
  return best;
}

void Skyline::raise(int x, int w, int top) {
  const int x_end = x + w;
  std::vector<SkylineSegment> next;
  next.reserve(segments_.size() + 2);
  for (const auto& s : segments_) {
    if (s.x_start < x) next.push_back({s.x_start, std::min(s.x_end, x), s.height});
  }
  next.push_back({x, x_end, top});
  for (const auto& s : segments_) {
    if (s.x_end > x_end) next.push_back({std::max(s.x_start, x_end), s.x_end, s.height});
  }
  segments_.clear();
  for (const auto& s : next) {
    if (!segments_.empty() && segments_.back().height == s.height) {
      segments_.back().x_end = s.x_end;
    } else {
      segments_.push_back(s);
    }
  }
}

void AnnealParams::validate() const {
  if (iterations < 0) throw Error("anneal: iterations must be >= 0");
  if (initial_temp && !(*initial_temp > 0.0)) throw Error("anneal: initial_temp must be positive");
  if (!(cooling > 0.0 && cooling < 1.0)) throw Error("anneal: cooling must lie in (0,1)");
}

void CostParams::validate() const {
  if (!(density_weight >= 0.0)) throw Error("cost: density_weight must be >= 0");
  if (!(aspect_weight >= 0.0)) throw Error("cost: aspect_weight must be >= 0");
  if (!(max_aspect >= 1.0)) throw Error("cost: max_aspect must be >= 1");
}

CostParams CostParams::defaults_for(std::span<const Block> blocks, double max_aspect) {
  std::map<int, long long> areas;
  for (const auto& b : blocks) {
    if (!b.is_controller()) areas[b.template_id] = b.rect.area();
  }
  if (areas.empty()) {
    for (const auto& b : blocks) areas[b.template_id] = b.rect.area();
  }
  double mean = 0.0;
  for (const auto& [id, a] : areas) mean += static_cast<double>(a);
  if (!areas.empty()) mean /= static_cast<double>(areas.size());
  return CostParams{0.1 * mean, mean, max_aspect};
}

std::optional<Layout> place_with_skyline(std::span<const Block> order, const GridConfig& grid, int width_budget,
                                         std::vector<Skyline>* trace) {
  if (order.empty()) throw Error("place_with_skyline: empty order");
  Skyline sky(width_budget);
  Layout layout;
  layout.grid = grid;
  for (const auto& spec : order) {
    Block b = spec;
    b.rect.x = 0;
    b.rect.y = 0;
    const Rect f = footprint(b, grid);
    const auto pos = sky.lowest_position(f.w);
    if (!pos) return std::nullopt;
    b.rect.x = pos->x - f.x;
    b.rect.y = pos->y - f.y;
    if (grid.outer_bound &&
        (b.rect.right() > grid.outer_bound->first || b.rect.top() > grid.outer_bound->second)) {
      return std::nullopt;
    }
    sky.raise(pos->x, f.w, pos->y + f.h);
    if (trace) trace->push_back(sky);
    if (b.is_controller()) {
      layout.controller = b;
    } else {
      layout.sites.push_back(b);
    }
  }
  return layout;
}

std::vector<int> candidate_widths(std::span<const Block> order, const GridConfig& grid) {
  std::vector<int> widths;
  if (order.empty()) return widths;
  long long total = 0;
  int min_w = std::numeric_limits<int>::max();
  int max_w = 0;
  for (const auto& spec : order) {
    Block b = spec;
    b.rect.x = b.rect.y = 0;
    const int fw = footprint(b, grid).w;
    total += fw;
    min_w = std::min(min_w, fw);
    max_w = std::max(max_w, fw);
  }
  const double avg = static_cast<double>(total) / static_cast<double>(order.size());
  const int n = static_cast<int>(order.size());
  for (int cols = 1; cols <= n; ++cols) {
    widths.push_back(static_cast<int>(std::ceil(avg * cols)));
    widths.push_back(min_w * cols);
    widths.push_back(max_w * cols);
  }
  std::erase_if(widths, [&](int w) {
    return w < max_w || (grid.outer_bound && w > grid.outer_bound->first + grid.margin_x);
  });
  std::sort(widths.begin(), widths.end());
  widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
  return widths;
}

double aspect_ratio(const Rect& box) {
  if (box.w <= 0 || box.h <= 0) throw Error("aspect ratio of a zero-dimension box");
  return static_cast<double>(std::max(box.w, box.h)) / static_cast<double>(std::min(box.w, box.h));
}

InitialLayout skyline_candidates(std::span<const Block> order, const GridConfig& grid) {
  if (order.empty()) throw Error("skyline_candidates: empty order");
  std::optional<InitialLayout> best, fallback;
  long long best_area = 0;
  double best_aspect = 0.0, fallback_aspect = 0.0;
  for (const int width : candidate_widths(order, grid)) {
    auto layout = place_with_skyline(order, grid, width);
    if (!layout) continue;
    const Rect box = blocks_bounding_box(*layout);
    const double aspect = aspect_ratio(box);
    if (aspect > grid.max_aspect + 1e-12) {
      // Kept only in case no width meets the bound; the cost's aspect term
      // then takes over.
      if (!fallback || aspect < fallback_aspect) {
        fallback = InitialLayout{std::move(*layout), width};
        fallback_aspect = aspect;
      }
      continue;
    }
    const long long area = box.area();
    const bool better = !best || area < best_area || (area == best_area && aspect < best_aspect);
    if (better) {
      best = InitialLayout{std::move(*layout), width};
      best_area = area;
      best_aspect = aspect;
    }
  }
  if (best) return std::move(*best);
  if (fallback) return std::move(*fallback);
  throw Error("no initial layout");
}

double compute_cost(const Layout& layout, const CostParams& params) {
  const Rect box = compute_bounding_box(layout);
  if (box.w <= 0 || box.h <= 0) throw Error("cost of a zero-dimension bounding box");
  const double area = static_cast<double>(box.area());
  const double density = static_cast<double>(chip_area(layout)) / area;
  const double aspect_excess = std::max(0.0, aspect_ratio(box) - params.max_aspect);
  return area + params.density_weight * (1.0 - density) + params.aspect_weight * aspect_excess;
}

std::vector<Block> perturb(std::span<const Block> order, std::mt19937_64& rng, bool protect_first) {
  std::vector<Block> out(order.begin(), order.end());
  const std::size_t first = protect_first ? 1 : 0;
  if (out.size() < first + 2) return out;
  const std::size_t span = out.size() - first;
  std::uniform_int_distribution<std::size_t> pick_a(0, span - 1);
  std::uniform_int_distribution<std::size_t> pick_b(0, span - 2);
  const std::size_t a = pick_a(rng);
  std::size_t b = pick_b(rng);
  if (b >= a) ++b;
  std::swap(out[first + a], out[first + b]);
  return out;
}

bool accept_move(double delta, double temperature, std::mt19937_64& rng) {
  if (delta < 0.0) return true;
  if (!(temperature > 0.0)) return false;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) < std::exp(-delta / temperature);
}

AnnealResult anneal(std::span<const Block> blocks, const GridConfig& grid, const AnnealParams& ap,
                    const CostParams& cp) {
  if (blocks.empty()) throw Error("anneal: no sites");
  ap.validate();
  cp.validate();
  std::mt19937_64 rng(ap.rng_seed);

  std::vector<Block> order(blocks.begin(), blocks.end());
  InitialLayout init = skyline_candidates(order, grid);

  AnnealResult result;
  result.width_budget = init.width_budget;
  result.initial = init.layout;
  result.initial_cost = compute_cost(init.layout, cp);

  Layout layout = std::move(init.layout);
  double cost = result.initial_cost;
  Layout best_layout = layout;
  double best_cost = cost;
  std::vector<Block> best_order = order;
  result.best_cost_trace.push_back(best_cost);

  double temperature = ap.initial_temp.value_or(0.1 * result.initial_cost);
  for (int step = 0; step < ap.iterations; ++step) {
    std::vector<Block> next_order = perturb(order, rng, ap.prioritize_largest);
    auto candidate = place_with_skyline(next_order, grid, result.width_budget);
    if (!candidate) continue;
    const double candidate_cost = compute_cost(*candidate, cp);
    const double delta = candidate_cost - cost;
    if (accept_move(delta, temperature, rng)) {
      order = std::move(next_order);
      layout = std::move(*candidate);
      cost = candidate_cost;
      if (cost < best_cost) {
        best_layout = layout;
        best_cost = cost;
        best_order = order;
      }
    }
    result.best_cost_trace.push_back(best_cost);
    temperature *= ap.cooling;
  }

  result.layout = std::move(best_layout);
  result.cost = best_cost;
  result.order = std::move(best_order);
  return result;
}

std::vector<Block> sort_by_area_desc(std::span<const Block> blocks) {
  std::vector<Block> out(blocks.begin(), blocks.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const Block& a, const Block& b) { return a.rect.area() > b.rect.area(); });
  return out;
}

}  // namespace sitepack
