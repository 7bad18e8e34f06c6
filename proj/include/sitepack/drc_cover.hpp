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

#ifndef SITEPACK_DRC_COVER_HPP_
#define SITEPACK_DRC_COVER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sitepack/core.hpp"

namespace sitepack {

enum class ScenarioKind { kPairAbut, kCornerAbut, kFourCorner, kTrackTemplateAbut, kTrackTrackAbut };

std::string_view to_string(ScenarioKind kind);

// One DRC-sensitive abutment configuration. `participants` holds template ids
// only (2 for pair/corner, 4 for four-corner, 1 for track-template, 0 for
// track-track). `orientation` is the side of the first participant facing the
// second; for corner contacts north/east/south/west name the NE/SE/SW/NW
// corner. Values produced by canonicalize() compare equal iff they describe
// the same configuration.
struct Scenario {
  ScenarioKind kind = ScenarioKind::kPairAbut;
  std::vector<int> participants;
  Side orientation = Side::kNorth;

  auto operator<=>(const Scenario&) const = default;
  std::string id() const;
};

Scenario canonicalize(Scenario s);

// Canonical, sorted, duplicate-free scenario set for a template library.
std::vector<Scenario> enumerate_scenarios(std::span<const Template> templates);

inline constexpr int kTrackKind = -1;

struct CoverComponent {
  int kind = kTrackKind;  // template id, or kTrackKind for a unit-width track
  Rect rect;

  bool is_track() const { return kind == kTrackKind; }
  bool operator==(const CoverComponent&) const = default;
};

struct CoverLayout {
  std::vector<CoverComponent> components;
  std::map<Scenario, int> covered;  // every occurrence recorded while building
  std::vector<Cell> voids;          // whitespace cells of four-corner occurrences
};

struct CoverOptions {
  double epsilon = 0.1;
  std::uint64_t seed = 1;
  int track_length = 3;
  int max_candidates = 64;
  double density_weight = 1.0;    // lambda_d
  double redundancy_weight = 0.25;  // lambda_r
};

// Epsilon-greedy construction of one layout containing every scenario.
// Throws Error("coverage stuck") if it cannot make progress.
CoverLayout greedy_cover(std::span<const Scenario> scenarios, std::span<const Template> templates,
                         const CoverOptions& options = {});

struct CoverageReport {
  std::map<Scenario, int> occurrences;  // every scenario found in the layout
  std::vector<Scenario> covered;        // requested scenarios present
  std::vector<Scenario> missing;        // requested scenarios absent
  double coverage_pct = 0.0;
  double avg_occurrence = 0.0;  // mean occurrences over covered requested scenarios
  long long layout_area = 0;    // bounding box area
};

// Rasterizes the layout on compressed coordinates and rescans every
// adjacency independently of the greedy bookkeeping.
CoverageReport verify_coverage(const CoverLayout& layout, std::span<const Scenario> scenarios);

std::string coverage_csv(const CoverageReport& report);

// Small synthetic library (ids 0..n-1) for sweeps; dimensions vary with id.
std::vector<Template> sweep_library(int n);

}  // namespace sitepack

#endif  // SITEPACK_DRC_COVER_HPP_
