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

#include "sitepack/layout_io.hpp"

#include "json_codec.hpp"
#include "sitepack/config.hpp"

namespace sitepack {

using codec::Json;
using codec::Reader;

namespace {

Json block_json(const Block& b) {
  Json j;
  j["id"] = b.id;
  j["template"] = b.template_id;
  j["x"] = b.rect.x;
  j["y"] = b.rect.y;
  j["width"] = b.rect.w;
  j["height"] = b.rect.h;
  j["port"] = codec::port_json(b.port);
  return j;
}

Block read_block(Reader& r, const Json& j, const std::string& path) {
  Block b;
  if (!r.object(j, path)) return b;
  r.only(j, path, {"id", "template", "x", "y", "width", "height", "port"});
  for (const char* key : {"id", "template", "x", "y", "width", "height"})
    if (!j.contains(key)) r.fail(Reader::join(path, key), "missing");
  r.get(j, path, "id", b.id);
  r.get(j, path, "template", b.template_id);
  r.get(j, path, "x", b.rect.x);
  r.get(j, path, "y", b.rect.y);
  r.get(j, path, "width", b.rect.w);
  r.get(j, path, "height", b.rect.h);
  if (j.contains("port")) codec::read_port(r, j.at("port"), Reader::join(path, "port"), b.port);
  if (b.rect.empty()) r.fail(path, "block must have positive size");
  return b;
}

Json cell_json(Cell c) { return Json::array({c.x, c.y}); }

std::optional<Cell> read_cell(Reader& r, const Json& j, const std::string& path) {
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    return Cell{j[0].get<int>(), j[1].get<int>()};
  }
  r.fail(path, "expected [x, y]");
  return std::nullopt;
}

}  // namespace

std::string layout_to_json(const Layout& layout) {
  Json root;
  root["grid"] = codec::grid_json(layout.grid);
  root["controller"] = layout.controller ? block_json(*layout.controller) : Json(nullptr);
  Json sites = Json::array();
  for (const auto& s : layout.sites) sites.push_back(block_json(s));
  root["sites"] = sites;
  Json routes = Json::array();
  for (const auto& p : layout.routes) {
    Json j;
    j["from"] = cell_json(p.from);
    j["to"] = cell_json(p.to);
    Json cells = Json::array();
    for (Cell c : p.cells) cells.push_back(cell_json(c));
    j["cells"] = cells;
    routes.push_back(j);
  }
  root["routes"] = routes;
  return root.dump(1) + "\n";
}

Layout layout_from_json(std::string_view text, std::string_view source) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(fmt::format("{}: parse error: {}", source, e.what()));
  }
  Reader r;
  Layout layout;
  if (!r.object(root, std::string(source))) throw ConfigError(r.errors.front());
  r.only(root, "", {"grid", "controller", "sites", "routes"});
  if (root.contains("grid")) codec::read_grid(r, root.at("grid"), "grid", layout.grid);
  r.check(layout.grid, "grid");
  if (root.contains("controller") && !root.at("controller").is_null()) {
    layout.controller = read_block(r, root.at("controller"), "controller");
  }
  if (root.contains("sites")) {
    const Json& s = root.at("sites");
    if (!s.is_array()) {
      r.fail("sites", "expected an array");
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) layout.sites.push_back(read_block(r, s[i], fmt::format("sites[{}]", i)));
    }
  }
  if (root.contains("routes")) {
    const Json& rs = root.at("routes");
    if (!rs.is_array()) {
      r.fail("routes", "expected an array");
    } else {
      for (std::size_t i = 0; i < rs.size(); ++i) {
        const std::string path = fmt::format("routes[{}]", i);
        if (!r.object(rs[i], path)) continue;
        r.only(rs[i], path, {"from", "to", "cells"});
        RoutePath p;
        if (rs[i].contains("from"))
          if (auto c = read_cell(r, rs[i].at("from"), path + ".from")) p.from = *c;
        if (rs[i].contains("to"))
          if (auto c = read_cell(r, rs[i].at("to"), path + ".to")) p.to = *c;
        if (rs[i].contains("cells") && rs[i].at("cells").is_array()) {
          const Json& cells = rs[i].at("cells");
          for (std::size_t k = 0; k < cells.size(); ++k)
            if (auto c = read_cell(r, cells[k], fmt::format("{}.cells[{}]", path, k))) p.cells.push_back(*c);
        }
        layout.routes.push_back(std::move(p));
      }
    }
  }
  if (r.errors.empty()) {
    try {
      check_unique_ids(layout);
    } catch (const Error& e) {
      r.fail("sites", e.what());
    }
  }
  if (!r.errors.empty()) {
    std::string msg = fmt::format("{}: invalid layout", source);
    for (const auto& e : r.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return layout;
}

}  // namespace sitepack
