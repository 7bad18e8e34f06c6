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

#include "sitepack/svg.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

namespace sitepack {

namespace {

std::string num(double v) { return fmt::format("{}", v == 0.0 ? 0.0 : v); }

std::string header(double w, double h) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n", num(w),
      num(h));
}

// Maps grid coordinates to pixels with y pointing down.
struct Frame {
  Rect box;
  double scale;

  double x(double gx) const { return (gx - box.x) * scale; }
  double y(double gy) const { return (box.top() - gy) * scale; }
};

std::string rect(const Frame& f, const Rect& r, std::string_view style) {
  return fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {}/>\n", num(f.x(r.x)), num(f.y(r.top())),
                     num(r.w * f.scale), num(r.h * f.scale), style);
}

std::pair<double, double> port_point(const Block& b) {
  const double mid = b.port.offset + b.port.length / 2.0;
  const Rect& r = b.rect;
  switch (b.port.side) {
    case Side::kNorth: return {r.x + mid, r.top()};
    case Side::kSouth: return {r.x + mid, r.y};
    case Side::kEast: return {r.right(), r.y + mid};
    case Side::kWest: return {r.x, r.y + mid};
  }
  return {r.x, r.y};
}

std::string shade(int rank, int count) {
  // rank 0 = never reached; later connections get darker.
  const double t = count > 0 ? static_cast<double>(rank) / count : 0.0;
  const int v = static_cast<int>(215 - 130 * t);
  return fmt::format("#{:02x}{:02x}{:02x}", v, v, std::min(255, v + 40));
}

}  // namespace

std::string render_svg(const Layout& layout, const SvgOptions& options) {
  const auto blocks = layout.blocks();
  if (blocks.empty() && layout.routes.empty()) return header(0, 0) + "</svg>\n";
  const Rect box = compute_bounding_box(layout);
  const Frame f{box, options.scale};
  std::string out = header(box.w * options.scale, box.h * options.scale);

  const Rect pin_bounds = inflate(box, 1);
  for (const auto& s : layout.sites) {
    int rank = 0;
    const Cell pin = pin_cell(s, pin_bounds);
    for (std::size_t i = 0; i < layout.routes.size(); ++i) {
      const auto& cells = layout.routes[i].cells;
      if (std::find(cells.begin(), cells.end(), pin) != cells.end()) {
        rank = static_cast<int>(i) + 1;
        break;
      }
    }
    out += rect(f, s.rect, fmt::format("fill=\"{}\" stroke=\"#333333\" stroke-width=\"0.5\"",
                                       shade(rank, static_cast<int>(layout.routes.size()))));
  }
  if (layout.controller) out += rect(f, layout.controller->rect, "fill=\"#d62728\" stroke=\"#333333\" stroke-width=\"0.5\"");
  for (const auto& p : layout.routes) {
    std::string pts;
    for (Cell c : p.cells) {
      if (!pts.empty()) pts += ' ';
      pts += num(f.x(c.x + 0.5)) + "," + num(f.y(c.y + 0.5));
    }
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"{}\"/>\n", pts,
                       num(options.scale));
  }
  out += rect(f, box, "fill=\"none\" stroke=\"#ffd700\" stroke-width=\"2\" stroke-dasharray=\"8,4\"");
  for (const auto& b : blocks) {
    const auto [px, py] = port_point(b);
    out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#ff0000\"/>\n", num(f.x(px)), num(f.y(py)),
                       num(std::max(1.5, options.scale)));
  }
  out += "</svg>\n";
  return out;
}

std::string render_cover_svg(const CoverLayout& layout, const SvgOptions& options) {
  if (layout.components.empty()) return header(0, 0) + "</svg>\n";
  Rect box = layout.components.front().rect;
  for (const auto& c : layout.components) box = unite(box, c.rect);
  const Frame f{box, options.scale};
  static constexpr std::array kPalette{"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                       "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
  std::string out = header(box.w * options.scale, box.h * options.scale);
  for (const auto& c : layout.components) {
    const std::string fill =
        c.is_track() ? "#222222" : kPalette[static_cast<std::size_t>(std::abs(c.kind)) % kPalette.size()];
    out += rect(f, c.rect, fmt::format("fill=\"{}\" stroke=\"#555555\" stroke-width=\"0.3\"", fill));
  }
  for (Cell v : layout.voids) out += rect(f, {v.x, v.y, 1, 1}, "fill=\"none\" stroke=\"#ff0000\" stroke-width=\"0.5\"");
  out += "</svg>\n";
  return out;
}

}  // namespace sitepack
