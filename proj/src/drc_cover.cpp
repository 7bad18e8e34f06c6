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

#include "sitepack/drc_cover.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

namespace sitepack {

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kPairAbut: return "pair_abut";
    case ScenarioKind::kCornerAbut: return "corner_abut";
    case ScenarioKind::kFourCorner: return "four_corner";
    case ScenarioKind::kTrackTemplateAbut: return "track_template_abut";
    case ScenarioKind::kTrackTrackAbut: return "track_track_abut";
  }
  return "?";
}

std::string Scenario::id() const {
  std::string parts = participants.empty() ? "-" : fmt::format("{}", fmt::join(participants, "+"));
  return fmt::format("{}:{}:{}", to_string(kind), parts, to_string(orientation));
}

namespace {

Side fold(Side s) {
  if (s == Side::kSouth) return Side::kNorth;
  if (s == Side::kWest) return Side::kEast;
  return s;
}

std::size_t expected_participants(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kPairAbut:
    case ScenarioKind::kCornerAbut: return 2;
    case ScenarioKind::kFourCorner: return 4;
    case ScenarioKind::kTrackTemplateAbut: return 1;
    case ScenarioKind::kTrackTrackAbut: return 0;
  }
  return 0;
}

}  // namespace

Scenario canonicalize(Scenario s) {
  if (s.participants.size() != expected_participants(s.kind)) {
    throw Error(fmt::format("scenario {}: expected {} participants", to_string(s.kind),
                            expected_participants(s.kind)));
  }
  switch (s.kind) {
    case ScenarioKind::kPairAbut:
    case ScenarioKind::kCornerAbut:
      // (a, b, side) seen from b is (b, a, opposite side); NE<->SW, SE<->NW.
      if (s.participants[0] > s.participants[1]) {
        std::swap(s.participants[0], s.participants[1]);
        s.orientation = opposite(s.orientation);
      } else if (s.participants[0] == s.participants[1]) {
        s.orientation = fold(s.orientation);
      }
      break;
    case ScenarioKind::kFourCorner:
      std::sort(s.participants.begin(), s.participants.end());
      s.orientation = Side::kNorth;
      break;
    case ScenarioKind::kTrackTemplateAbut: break;
    case ScenarioKind::kTrackTrackAbut: s.orientation = fold(s.orientation); break;
  }
  return s;
}

std::vector<Scenario> enumerate_scenarios(std::span<const Template> templates) {
  std::vector<int> ids;
  for (const auto& t : templates) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw Error("duplicate template id");

  constexpr std::array kAll{Side::kNorth, Side::kSouth, Side::kEast, Side::kWest};
  constexpr std::array kFolded{Side::kNorth, Side::kEast};
  std::vector<Scenario> out;
  const std::size_t n = ids.size();
  for (auto kind : {ScenarioKind::kPairAbut, ScenarioKind::kCornerAbut}) {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({kind, {ids[i], ids[i]}, Side::kNorth});
      out.push_back({kind, {ids[i], ids[i]}, Side::kEast});
      for (std::size_t j = i + 1; j < n; ++j) {
        for (Side s : kAll) out.push_back({kind, {ids[i], ids[j]}, s});
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        for (std::size_t d = c; d < n; ++d)
          out.push_back({ScenarioKind::kFourCorner, {ids[a], ids[b], ids[c], ids[d]}, Side::kNorth});
  for (int id : ids)
    for (Side s : kAll) out.push_back({ScenarioKind::kTrackTemplateAbut, {id}, s});
  for (Side s : kFolded) out.push_back({ScenarioKind::kTrackTrackAbut, {}, s});
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Scenario classify_edge(int ka, int kb, Side side_of_a) {
  const bool ta = ka == kTrackKind;
  const bool tb = kb == kTrackKind;
  if (!ta && !tb) return canonicalize({ScenarioKind::kPairAbut, {ka, kb}, side_of_a});
  if (!ta) return {ScenarioKind::kTrackTemplateAbut, {ka}, side_of_a};
  if (!tb) return {ScenarioKind::kTrackTemplateAbut, {kb}, opposite(side_of_a)};
  return canonicalize({ScenarioKind::kTrackTrackAbut, {}, side_of_a});
}

int overlap_len(int a0, int a1, int b0, int b1) { return std::min(a1, b1) - std::max(a0, b0); }

// Uniform bucket grid over component rectangles.
class SpatialIndex {
 public:
  explicit SpatialIndex(int bucket) : bucket_(std::max(bucket, 1)) {}

  void insert(int idx, const Rect& r) { visit(r, [&](long long key) { cells_[key].push_back(idx); }); }
  // Removes `idx`, which must be the most recent insertion into each bucket.
  void erase_last(int idx, const Rect& r) {
    visit(r, [&](long long key) {
      auto& v = cells_[key];
      if (!v.empty() && v.back() == idx) v.pop_back();
    });
  }
  std::vector<int> query(const Rect& r) const {
    std::vector<int> out;
    visit(r, [&](long long key) {
      auto it = cells_.find(key);
      if (it != cells_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  int floor_div(int v) const { return v >= 0 ? v / bucket_ : -((-v + bucket_ - 1) / bucket_); }
  template <typename F>
  void visit(const Rect& r, F&& f) const {
    if (r.empty()) return;
    const int x0 = floor_div(r.x), x1 = floor_div(r.right() - 1);
    const int y0 = floor_div(r.y), y1 = floor_div(r.top() - 1);
    for (int bx = x0; bx <= x1; ++bx)
      for (int by = y0; by <= y1; ++by) f((static_cast<long long>(bx) << 32) ^ static_cast<unsigned>(by));
  }

  int bucket_;
  std::unordered_map<long long, std::vector<int>> cells_;
};

struct Candidate {
  std::vector<CoverComponent> group;
};

class CoverState {
 public:
  explicit CoverState(int bucket) : index_(bucket), void_index_(bucket) {}

  const std::vector<CoverComponent>& components() const { return comps_; }
  const std::vector<Cell>& voids() const { return voids_; }

  int owner(Cell c) const {
    for (int i : index_.query({c.x, c.y, 1, 1}))
      if (comps_[i].rect.contains(c)) return i;
    return -1;
  }

  bool fits(const Rect& r) const {
    for (int i : index_.query(r))
      if (overlaps(comps_[i].rect, r)) return false;
    for (int i : void_index_.query(r))
      if (r.contains(voids_[i])) return false;
    return true;
  }

  // Adds `c` and returns every occurrence it creates with what is present.
  std::vector<Scenario> push(const CoverComponent& c) {
    std::vector<Scenario> occ;
    const Rect& m = c.rect;
    for (int i : index_.query(inflate(m, 1))) {
      const CoverComponent& d = comps_[i];
      const Rect& r = d.rect;
      const int xo = overlap_len(m.x, m.right(), r.x, r.right());
      const int yo = overlap_len(m.y, m.top(), r.y, r.top());
      if (r.y == m.top() && xo > 0) occ.push_back(classify_edge(c.kind, d.kind, Side::kNorth));
      if (r.top() == m.y && xo > 0) occ.push_back(classify_edge(c.kind, d.kind, Side::kSouth));
      if (r.x == m.right() && yo > 0) occ.push_back(classify_edge(c.kind, d.kind, Side::kEast));
      if (r.right() == m.x && yo > 0) occ.push_back(classify_edge(c.kind, d.kind, Side::kWest));
      if (c.is_track() || d.is_track()) continue;
      std::optional<Side> corner;
      if (r.x == m.right() && r.y == m.top()) corner = Side::kNorth;
      if (r.x == m.right() && r.top() == m.y) corner = Side::kEast;
      if (r.right() == m.x && r.top() == m.y) corner = Side::kSouth;
      if (r.right() == m.x && r.y == m.top()) corner = Side::kWest;
      if (corner) occ.push_back(canonicalize({ScenarioKind::kCornerAbut, {c.kind, d.kind}, *corner}));
    }
    const int idx = static_cast<int>(comps_.size());
    comps_.push_back(c);
    index_.insert(idx, m);
    pushed_voids_.push_back(0);
    if (!c.is_track()) {
      const std::array<Cell, 4> around{Cell{m.right(), m.top()}, Cell{m.x - 1, m.top()},
                                       Cell{m.right(), m.y - 1}, Cell{m.x - 1, m.y - 1}};
      for (Cell v : around) {
        if (auto s = void_pattern(v)) {
          occ.push_back(*s);
          void_index_.insert(static_cast<int>(voids_.size()), {v.x, v.y, 1, 1});
          voids_.push_back(v);
          ++pushed_voids_.back();
        }
      }
    }
    return occ;
  }

  void pop() {
    for (int k = 0; k < pushed_voids_.back(); ++k) {
      const Cell v = voids_.back();
      void_index_.erase_last(static_cast<int>(voids_.size()) - 1, {v.x, v.y, 1, 1});
      voids_.pop_back();
    }
    pushed_voids_.pop_back();
    const int idx = static_cast<int>(comps_.size()) - 1;
    index_.erase_last(idx, comps_.back().rect);
    comps_.pop_back();
  }

 private:
  bool is_recorded_void(Cell v) const {
    for (int i : void_index_.query({v.x, v.y, 1, 1}))
      if (voids_[i] == v) return true;
    return false;
  }

  // Four templates meeting diagonally at the empty unit cell `v`.
  std::optional<Scenario> void_pattern(Cell v) const {
    if (owner(v) >= 0 || is_recorded_void(v)) return std::nullopt;
    const int sw = owner({v.x - 1, v.y - 1});
    const int se = owner({v.x + 1, v.y - 1});
    const int nw = owner({v.x - 1, v.y + 1});
    const int ne = owner({v.x + 1, v.y + 1});
    for (int i : {sw, se, nw, ne})
      if (i < 0 || comps_[i].is_track()) return std::nullopt;
    const Rect& a = comps_[sw].rect;
    const Rect& b = comps_[se].rect;
    const Rect& c = comps_[nw].rect;
    const Rect& d = comps_[ne].rect;
    if (a.right() != v.x || a.top() != v.y) return std::nullopt;
    if (b.x != v.x + 1 || b.top() != v.y) return std::nullopt;
    if (c.right() != v.x || c.y != v.y + 1) return std::nullopt;
    if (d.x != v.x + 1 || d.y != v.y + 1) return std::nullopt;
    return canonicalize({ScenarioKind::kFourCorner,
                         {comps_[sw].kind, comps_[se].kind, comps_[nw].kind, comps_[ne].kind},
                         Side::kNorth});
  }

  std::vector<CoverComponent> comps_;
  std::vector<Cell> voids_;
  std::vector<int> pushed_voids_;
  SpatialIndex index_;
  SpatialIndex void_index_;
};

struct Shape {
  int w = 1;
  int h = 1;
};

// Rectangle of size `s` abutting side `side` of `a`; `low` aligns the low ends.
Rect beside(const Rect& a, Side side, Shape s, bool low) {
  switch (side) {
    case Side::kNorth: return {low ? a.x : a.right() - s.w, a.top(), s.w, s.h};
    case Side::kSouth: return {low ? a.x : a.right() - s.w, a.y - s.h, s.w, s.h};
    case Side::kEast: return {a.right(), low ? a.y : a.top() - s.h, s.w, s.h};
    case Side::kWest: return {a.x - s.w, low ? a.y : a.top() - s.h, s.w, s.h};
  }
  return {};
}

// Rectangle touching only the given corner of `a` (north = NE, east = SE,
// south = SW, west = NW).
Rect at_corner(const Rect& a, Side corner, Shape s) {
  switch (corner) {
    case Side::kNorth: return {a.right(), a.top(), s.w, s.h};
    case Side::kEast: return {a.right(), a.y - s.h, s.w, s.h};
    case Side::kSouth: return {a.x - s.w, a.y - s.h, s.w, s.h};
    case Side::kWest: return {a.x - s.w, a.top(), s.w, s.h};
  }
  return {};
}

// Roles around a void: 0 = SW, 1 = SE, 2 = NW, 3 = NE.
Cell void_for_role(const Rect& r, int role) {
  switch (role) {
    case 0: return {r.right(), r.top()};
    case 1: return {r.x - 1, r.top()};
    case 2: return {r.right(), r.y - 1};
    default: return {r.x - 1, r.y - 1};
  }
}

Rect rect_for_role(Cell v, int role, Shape s) {
  switch (role) {
    case 0: return {v.x - s.w, v.y - s.h, s.w, s.h};
    case 1: return {v.x + 1, v.y - s.h, s.w, s.h};
    case 2: return {v.x - s.w, v.y + 1, s.w, s.h};
    default: return {v.x + 1, v.y + 1, s.w, s.h};
  }
}

class Planner {
 public:
  Planner(std::span<const Template> templates, int track_length) : track_length_(track_length) {
    for (const auto& t : templates) shapes_[t.id] = {t.width, t.height};
  }

  Shape shape(int kind) const { return shapes_.at(kind); }
  Shape track(Side side) const {
    return side == Side::kNorth || side == Side::kSouth ? Shape{track_length_, 1} : Shape{1, track_length_};
  }
  static Shape shape_of(const Rect& r) { return {r.w, r.h}; }

  // Group realizing `s` in isolation, lower-left at the origin.
  std::vector<CoverComponent> isolated(const Scenario& s) const {
    std::vector<CoverComponent> g;
    const auto& p = s.participants;
    switch (s.kind) {
      case ScenarioKind::kPairAbut: {
        const Rect a{0, 0, shape(p[0]).w, shape(p[0]).h};
        g = {{p[0], a}, {p[1], beside(a, s.orientation, shape(p[1]), true)}};
        break;
      }
      case ScenarioKind::kCornerAbut: {
        const Rect a{0, 0, shape(p[0]).w, shape(p[0]).h};
        g = {{p[0], a}, {p[1], at_corner(a, s.orientation, shape(p[1]))}};
        break;
      }
      case ScenarioKind::kFourCorner:
        for (int role = 0; role < 4; ++role) g.push_back({p[role], rect_for_role({0, 0}, role, shape(p[role]))});
        break;
      case ScenarioKind::kTrackTemplateAbut: {
        const Rect a{0, 0, shape(p[0]).w, shape(p[0]).h};
        g = {{p[0], a}, {kTrackKind, beside(a, s.orientation, track(s.orientation), true)}};
        break;
      }
      case ScenarioKind::kTrackTrackAbut: {
        const Rect a{0, 0, track_length_, 1};
        g = {{kTrackKind, a}, {kTrackKind, beside(a, s.orientation, shape_of(a), true)}};
        break;
      }
    }
    Rect box = g.front().rect;
    for (const auto& c : g) box = unite(box, c.rect);
    for (auto& c : g) c.rect = translate(c.rect, -box.x, -box.y);
    return g;
  }

  // Groups realizing `s` against existing components of compatible kind.
  void adjacent(const Scenario& s, const std::unordered_map<int, std::vector<int>>& by_kind,
                const std::vector<CoverComponent>& comps, std::vector<Candidate>& out) const {
    auto anchors = [&](int kind) {
      std::vector<int> v;
      auto it = by_kind.find(kind);
      if (it == by_kind.end()) return v;
      const auto& all = it->second;
      for (std::size_t k = 0; k < all.size() && k < kAnchors; ++k) v.push_back(all[all.size() - 1 - k]);
      return v;
    };
    const auto& p = s.participants;
    switch (s.kind) {
      case ScenarioKind::kPairAbut:
        for (int i : anchors(p[0]))
          for (bool low : {true, false})
            out.push_back({{{p[1], beside(comps[i].rect, s.orientation, shape(p[1]), low)}}});
        for (int i : anchors(p[1]))
          for (bool low : {true, false})
            out.push_back({{{p[0], beside(comps[i].rect, opposite(s.orientation), shape(p[0]), low)}}});
        break;
      case ScenarioKind::kCornerAbut:
        for (int i : anchors(p[0])) out.push_back({{{p[1], at_corner(comps[i].rect, s.orientation, shape(p[1]))}}});
        for (int i : anchors(p[1]))
          out.push_back({{{p[0], at_corner(comps[i].rect, opposite(s.orientation), shape(p[0]))}}});
        break;
      case ScenarioKind::kFourCorner: {
        std::vector<int> kinds = p;
        kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
        for (int kind : kinds) {
          auto a = anchors(kind);
          if (a.empty()) continue;
          const Rect& r = comps[a.front()].rect;
          std::vector<int> rest = p;
          rest.erase(std::find(rest.begin(), rest.end(), kind));
          for (int role = 0; role < 4; ++role) {
            const Cell v = void_for_role(r, role);
            Candidate c;
            std::size_t k = 0;
            for (int other = 0; other < 4; ++other) {
              if (other == role) continue;
              c.group.push_back({rest[k], rect_for_role(v, other, shape(rest[k]))});
              ++k;
            }
            out.push_back(std::move(c));
          }
        }
        break;
      }
      case ScenarioKind::kTrackTemplateAbut:
        for (int i : anchors(p[0]))
          for (bool low : {true, false})
            out.push_back({{{kTrackKind, beside(comps[i].rect, s.orientation, track(s.orientation), low)}}});
        for (int i : anchors(kTrackKind))
          for (bool low : {true, false})
            out.push_back({{{p[0], beside(comps[i].rect, opposite(s.orientation), shape(p[0]), low)}}});
        break;
      case ScenarioKind::kTrackTrackAbut:
        for (int i : anchors(kTrackKind)) {
          const Rect& r = comps[i].rect;
          out.push_back({{{kTrackKind, beside(r, s.orientation, shape_of(r), true)}}});
          out.push_back({{{kTrackKind, beside(r, opposite(s.orientation), shape_of(r), true)}}});
        }
        break;
    }
  }

 private:
  static constexpr std::size_t kAnchors = 3;
  int track_length_;
  std::unordered_map<int, Shape> shapes_;
};

// Lower-left origin for an isolated group: the first raster position inside
// the current bounding box with a two-track clearance to everything, else
// just outside the box along its shorter dimension.
Cell fresh_origin(const CoverState& state, const std::optional<Rect>& bbox,
                  const std::vector<CoverComponent>& group, int step) {
  if (!bbox) return {0, 0};
  Rect extent = group.front().rect;
  for (const auto& c : group) extent = unite(extent, c.rect);
  for (int y = bbox->y + 2; y + extent.h + 2 <= bbox->top(); y += step) {
    for (int x = bbox->x + 2; x + extent.w + 2 <= bbox->right(); x += step) {
      if (state.fits({x - 2, y - 2, extent.w + 4, extent.h + 4})) return {x, y};
    }
  }
  if (bbox->w <= bbox->h) return {bbox->right() + 2, bbox->y};
  return {bbox->x, bbox->top() + 2};
}

}  // namespace

CoverLayout greedy_cover(std::span<const Scenario> scenarios, std::span<const Template> templates,
                         const CoverOptions& options) {
  if (!(options.epsilon >= 0.0 && options.epsilon <= 1.0)) throw Error("epsilon must lie in [0, 1]");
  if (options.track_length < 1) throw Error("track_length must be >= 1");
  if (options.max_candidates < 1) throw Error("max_candidates must be >= 1");
  int max_dim = options.track_length;
  for (const auto& t : templates) {
    t.validate();
    max_dim = std::max({max_dim, t.width, t.height});
  }
  std::set<Scenario> required;
  for (const auto& s : scenarios) {
    const Scenario c = canonicalize(s);
    for (int id : c.participants)
      if (std::none_of(templates.begin(), templates.end(), [&](const Template& t) { return t.id == id; }))
        throw Error(fmt::format("scenario {} references unknown template {}", c.id(), id));
    required.insert(c);
  }

  Planner planner(templates, options.track_length);
  CoverState state(std::max(4, max_dim / 2));
  CoverLayout layout;
  std::unordered_map<int, std::vector<int>> by_kind;
  std::optional<Rect> bbox;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Scenario> pending(required.begin(), required.end());
  const std::size_t max_iterations = 50 * required.size() + 100;
  for (std::size_t iter = 0; !pending.empty(); ++iter) {
    if (iter >= max_iterations) throw Error("coverage stuck");
    std::vector<Candidate> candidates;
    const auto cap = static_cast<std::size_t>(options.max_candidates);
    for (const auto& s : pending) {
      if (candidates.size() + 1 >= cap) break;
      planner.adjacent(s, by_kind, state.components(), candidates);
    }
    if (candidates.size() + 1 > cap) candidates.resize(cap - 1);
    {
      Candidate fresh{planner.isolated(pending.front())};
      const Cell at = fresh_origin(state, bbox, fresh.group, max_dim);
      for (auto& c : fresh.group) c.rect = translate(c.rect, at.x, at.y);
      candidates.push_back(std::move(fresh));
    }

    struct Scored {
      std::size_t index;
      double score;
    };
    std::vector<Scored> feasible;
    const double old_area = bbox ? static_cast<double>(bbox->area()) : 0.0;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const auto& group = candidates[ci].group;
      std::size_t pushed = 0;
      bool ok = true;
      std::vector<Scenario> occ;
      for (const auto& c : group) {
        if (!state.fits(c.rect)) {
          ok = false;
          break;
        }
        auto found = state.push(c);
        ++pushed;
        occ.insert(occ.end(), found.begin(), found.end());
      }
      for (std::size_t k = 0; k < pushed; ++k) state.pop();
      if (!ok) continue;
      std::set<Scenario> fresh_hits;
      for (const auto& s : occ)
        if (required.count(s) && !layout.covered.count(s)) fresh_hits.insert(s);
      if (fresh_hits.empty()) continue;
      Rect box = bbox.value_or(group.front().rect);
      for (const auto& c : group) box = unite(box, c.rect);
      const double new_area = static_cast<double>(box.area());
      const double growth = new_area > 0 ? (new_area - old_area) / new_area : 0.0;
      const double redundant = static_cast<double>(occ.size() - fresh_hits.size());
      const double score = static_cast<double>(fresh_hits.size()) - options.density_weight * growth -
                           options.redundancy_weight * redundant;
      feasible.push_back({ci, score});
    }
    if (feasible.empty()) throw Error("coverage stuck");

    std::size_t pick = feasible.front().index;
    if (options.epsilon > 0.0 && unit(rng) < options.epsilon) {
      std::uniform_int_distribution<std::size_t> any(0, feasible.size() - 1);
      pick = feasible[any(rng)].index;
    } else {
      double best = feasible.front().score;
      for (const auto& f : feasible) {
        if (f.score > best) {
          best = f.score;
          pick = f.index;
        }
      }
    }

    for (const auto& c : candidates[pick].group) {
      for (const auto& s : state.push(c)) ++layout.covered[s];
      by_kind[c.kind].push_back(static_cast<int>(state.components().size()) - 1);
      bbox = bbox ? unite(*bbox, c.rect) : c.rect;
    }
    std::erase_if(pending, [&](const Scenario& s) { return layout.covered.count(s) > 0; });
  }
  layout.components = state.components();
  layout.voids = state.voids();
  return layout;
}

CoverageReport verify_coverage(const CoverLayout& layout, std::span<const Scenario> scenarios) {
  CoverageReport report;
  const auto& comps = layout.components;
  if (!comps.empty()) {
    Rect box = comps.front().rect;
    for (const auto& c : comps) box = unite(box, c.rect);
    report.layout_area = box.area();

    std::vector<int> xs, ys;
    for (const auto& c : comps) {
      xs.insert(xs.end(), {c.rect.x, c.rect.right()});
      ys.insert(ys.end(), {c.rect.y, c.rect.top()});
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    const int nx = static_cast<int>(xs.size()) - 1;
    const int ny = static_cast<int>(ys.size()) - 1;
    auto ix = [&](int v) { return static_cast<int>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin()); };
    auto iy = [&](int v) { return static_cast<int>(std::lower_bound(ys.begin(), ys.end(), v) - ys.begin()); };
    std::vector<int> grid(static_cast<std::size_t>(nx) * ny, -1);
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const Rect& r = comps[k].rect;
      for (int i = ix(r.x); i < ix(r.right()); ++i)
        for (int j = iy(r.y); j < iy(r.top()); ++j) {
          int& cell = grid[static_cast<std::size_t>(j) * nx + i];
          if (cell < 0) cell = static_cast<int>(k);
        }
    }
    auto at = [&](int i, int j) {
      if (i < 0 || j < 0 || i >= nx || j >= ny) return -1;
      return grid[static_cast<std::size_t>(j) * nx + i];
    };
    auto is_template = [&](int k) { return k >= 0 && !comps[k].is_track(); };

    std::set<std::tuple<int, int, int>> edges;  // (a, b, side of a)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int a = at(i, j);
        if (a < 0) continue;
        const int east = at(i + 1, j);
        const int north = at(i, j + 1);
        if (east >= 0 && east != a) edges.insert({a, east, static_cast<int>(Side::kEast)});
        if (north >= 0 && north != a) edges.insert({a, north, static_cast<int>(Side::kNorth)});
      }
    for (const auto& [a, b, side] : edges)
      ++report.occurrences[classify_edge(comps[a].kind, comps[b].kind, static_cast<Side>(side))];

    for (int j = 1; j < ny; ++j)
      for (int i = 1; i < nx; ++i) {
        const int ll = at(i - 1, j - 1), lr = at(i, j - 1), ul = at(i - 1, j), ur = at(i, j);
        if (is_template(ll) && is_template(ur) && ll != ur && lr != ll && lr != ur && ul != ll && ul != ur)
          ++report.occurrences[canonicalize({ScenarioKind::kCornerAbut, {comps[ll].kind, comps[ur].kind}, Side::kNorth})];
        if (is_template(ul) && is_template(lr) && ul != lr && ll != ul && ll != lr && ur != ul && ur != lr)
          ++report.occurrences[canonicalize({ScenarioKind::kCornerAbut, {comps[ul].kind, comps[lr].kind}, Side::kEast})];
      }

    for (int j = 1; j + 1 < ny; ++j)
      for (int i = 1; i + 1 < nx; ++i) {
        if (at(i, j) >= 0 || xs[i + 1] - xs[i] != 1 || ys[j + 1] - ys[j] != 1) continue;
        const int sw = at(i - 1, j - 1), se = at(i + 1, j - 1), nw = at(i - 1, j + 1), ne = at(i + 1, j + 1);
        if (!is_template(sw) || !is_template(se) || !is_template(nw) || !is_template(ne)) continue;
        // Each must stop exactly at the void's row and column.
        if (at(i, j - 1) == sw || at(i - 1, j) == sw) continue;
        if (at(i, j - 1) == se || at(i + 1, j) == se) continue;
        if (at(i - 1, j) == nw || at(i, j + 1) == nw) continue;
        if (at(i + 1, j) == ne || at(i, j + 1) == ne) continue;
        ++report.occurrences[canonicalize(
            {ScenarioKind::kFourCorner, {comps[sw].kind, comps[se].kind, comps[nw].kind, comps[ne].kind}, Side::kNorth})];
      }
  }

  std::set<Scenario> requested;
  for (const auto& s : scenarios) requested.insert(canonicalize(s));
  long long total = 0;
  for (const auto& s : requested) {
    auto it = report.occurrences.find(s);
    if (it == report.occurrences.end()) {
      report.missing.push_back(s);
    } else {
      report.covered.push_back(s);
      total += it->second;
    }
  }
  report.coverage_pct =
      requested.empty() ? 100.0 : 100.0 * static_cast<double>(report.covered.size()) / requested.size();
  report.avg_occurrence =
      report.covered.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(report.covered.size());
  return report;
}

std::string coverage_csv(const CoverageReport& report) {
  std::vector<Scenario> all = report.covered;
  all.insert(all.end(), report.missing.begin(), report.missing.end());
  std::sort(all.begin(), all.end());
  std::string out = "scenario,kind,occurrences\n";
  for (const auto& s : all) {
    auto it = report.occurrences.find(s);
    out += fmt::format("{},{},{}\n", s.id(), to_string(s.kind), it == report.occurrences.end() ? 0 : it->second);
  }
  return out;
}

std::vector<Template> sweep_library(int n) {
  std::vector<Template> lib;
  for (int k = 0; k < n; ++k) {
    Template t;
    t.id = k;
    t.width = 4 + k % 3;
    t.height = 4 + (k / 3) % 3;
    t.port = {Side::kNorth, 0, 1};
    lib.push_back(t);
  }
  return lib;
}

}  // namespace sitepack
