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

#ifndef SITEPACK_METRICS_HPP_
#define SITEPACK_METRICS_HPP_

#include "sitepack/core.hpp"

namespace sitepack {

// Benchmark statistics in squared track units. Percentages are rounded half-up
// to two decimals.
struct Metrics {
  double solver_time_s = 0.0;
  double chip_site_area = 0.0;
  double track_area = 0.0;
  double bbox_area = 0.0;
  double chip_plus_track_area = 0.0;
  double util_pct = 0.0;
  double track_pct = 0.0;
};

double round2(double value);

// Derives the remaining columns from raw areas. Throws Error if bbox_area <= 0.
Metrics metrics_from_areas(double chip_site_area, double track_area, double bbox_area,
                           double solver_time_s = 0.0);

// Chip-site area counts every block including the controller; track area is
// the number of distinct route cells.
Metrics compute_metrics(const Layout& layout, double solver_time_s);

long long chip_area(const Layout& layout);
long long track_cell_count(const Layout& layout);

}  // namespace sitepack

#endif  // SITEPACK_METRICS_HPP_
