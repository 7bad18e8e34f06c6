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

#ifndef SITEPACK_PLACEMENT_HPP_
#define SITEPACK_PLACEMENT_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "sitepack/core.hpp"

namespace sitepack {

struct SkylineSegment {
  int x_start = 0;
  int x_end = 0;
  int height = 0;

  bool operator==(const SkylineSegment&) const = default;
};

// Upper envelope of everything placed so far across [0, width). Adjacent
// segments always differ in height.
class Skyline {
 public:
  explicit Skyline(int width);

  int width() const { return width_; }
  const std::vector<SkylineSegment>& segments() const { return segments_; }

  // Height a footprint spanning [x, x+w) would rest on.
  int rest_height(int x, int w) const;

  // Lowest resting position for a w-wide footprint, ties to the smallest x.
  // Absent when w exceeds the skyline width.
  std::optional<Cell> lowest_position(int w) const;

  // Raises [x, x+w) to `top`.
  void raise(int x, int w, int top);

 private:
  int width_;
  std::vector<SkylineSegment> segments_;
};

struct AnnealParams {
  int iterations = 2000;
  std::optional<double> initial_temp;  // defaults to 0.1 x initial cost
  double cooling = 0.95;
  std::uint64_t rng_seed = 1;
  bool prioritize_largest = true;  // keep position 0 out of swaps

  void validate() const;
};

struct CostParams {
  double density_weight = 0.0;
  double aspect_weight = 0.0;
  double max_aspect = 2.0;

  void validate() const;
  // w_d = 0.1 * mean template area, w_ar = mean template area.
  static CostParams defaults_for(std::span<const Block> blocks, double max_aspect = 2.0);
};

// Places blocks in order, each at the lowest feasible y (ties to smaller x)
// under a fixed width budget. Block sizes and ports are read from `order`;
// positions are ignored. A block with id kControllerId becomes the layout's
// controller. Returns nullopt if some block has no feasible position. When
// `trace` is given, the skyline after each placement is appended to it.
std::optional<Layout> place_with_skyline(std::span<const Block> order, const GridConfig& grid, int width_budget,
                                         std::vector<Skyline>* trace = nullptr);

struct InitialLayout {
  Layout layout;
  int width_budget = 0;
};

// Width budgets derived from the footprint widths of `order`, one per
// row-column configuration, deduplicated and ascending.
std::vector<int> candidate_widths(std::span<const Block> order, const GridConfig& grid);

// Runs place_with_skyline over every candidate width and keeps the smallest
// area layout whose aspect ratio stays within grid.max_aspect (ties: lower
// aspect, then narrower). When no width meets the bound, the least elongated
// layout is returned. Throws Error("no initial layout") if no width places
// every block.
InitialLayout skyline_candidates(std::span<const Block> order, const GridConfig& grid);

double aspect_ratio(const Rect& box);

// Cost = A + w_d (1 - rho) + w_ar max(0, aspect - R_max).
double compute_cost(const Layout& layout, const CostParams& params);

// Swaps two distinct positions chosen uniformly; position 0 is excluded when
// protect_first is set. Sequences with fewer than two swappable positions
// are returned unchanged.
std::vector<Block> perturb(std::span<const Block> order, std::mt19937_64& rng, bool protect_first = false);

// Metropolis acceptance: always for delta < 0, else with probability
// exp(-delta / temperature).
bool accept_move(double delta, double temperature, std::mt19937_64& rng);

struct AnnealResult {
  Layout layout;
  double cost = 0.0;
  std::vector<Block> order;
  int width_budget = 0;
  Layout initial;
  double initial_cost = 0.0;
  std::vector<double> best_cost_trace;  // best cost after every evaluated candidate
};

// Skyline initialisation followed by order-swapping simulated annealing.
AnnealResult anneal(std::span<const Block> blocks, const GridConfig& grid, const AnnealParams& ap,
                    const CostParams& cp);

// Sorts by block area, largest first; stable so equal areas keep input order.
std::vector<Block> sort_by_area_desc(std::span<const Block> blocks);

}  // namespace sitepack

#endif  // SITEPACK_PLACEMENT_HPP_
