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

#ifndef SITEPACK_SVG_HPP_
#define SITEPACK_SVG_HPP_

#include <string>

#include "sitepack/core.hpp"
#include "sitepack/drc_cover.hpp"

namespace sitepack {

struct SvgOptions {
  double scale = 2.0;  // pixels per track
};

// Sites shaded darker the later they are reached by the route sequence,
// controller in red, routes as polylines, the bounding box as a yellow
// dashed rectangle and each port as a red dot. Exactly one <rect> per block
// plus one for the bounding box, one <polyline> per route and one <circle>
// per block.
std::string render_svg(const Layout& layout, const SvgOptions& options = {});

// Coverage layout: templates colored by id, tracks dark, voids outlined.
std::string render_cover_svg(const CoverLayout& layout, const SvgOptions& options = {});

}  // namespace sitepack

#endif  // SITEPACK_SVG_HPP_
