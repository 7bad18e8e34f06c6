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

#include "sitepack/metrics.hpp"

#include <cmath>
#include <unordered_set>

namespace sitepack {

double round2(double value) { return std::floor(value * 100.0 + 0.5) / 100.0; }

Metrics metrics_from_areas(double chip_site_area, double track_area, double bbox_area,
                           double solver_time_s) {
  if (!(bbox_area > 0.0)) throw Error("bounding box area must be positive");
  Metrics m;
  m.solver_time_s = solver_time_s;
  m.chip_site_area = chip_site_area;
  m.track_area = track_area;
  m.bbox_area = bbox_area;
  m.chip_plus_track_area = chip_site_area + track_area;
  m.util_pct = round2(100.0 * m.chip_plus_track_area / bbox_area);
  m.track_pct = round2(100.0 * track_area / bbox_area);
  return m;
}

long long chip_area(const Layout& layout) {
  long long area = 0;
  for (const auto& b : layout.sites) area += b.rect.area();
  if (layout.controller) area += layout.controller->rect.area();
  return area;
}

long long track_cell_count(const Layout& layout) {
  std::unordered_set<Cell, CellHash> cells;
  for (const auto& route : layout.routes) cells.insert(route.cells.begin(), route.cells.end());
  return static_cast<long long>(cells.size());
}

Metrics compute_metrics(const Layout& layout, double solver_time_s) {
  const Rect box = compute_bounding_box(layout);
  return metrics_from_areas(static_cast<double>(chip_area(layout)),
                            static_cast<double>(track_cell_count(layout)), static_cast<double>(box.area()),
                            solver_time_s);
}

}  // namespace sitepack
