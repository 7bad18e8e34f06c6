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

#include "sitepack/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json_codec.hpp"

namespace sitepack {

using codec::Json;
using codec::Reader;

std::optional<CostParams> RunConfig::cost() const {
  if (!density_weight || !aspect_weight) return std::nullopt;
  CostParams c;
  c.density_weight = *density_weight;
  c.aspect_weight = *aspect_weight;
  c.max_aspect = grid.max_aspect;
  return c;
}

BenchmarkInstance RunConfig::benchmark_instance(const InstanceSpec& spec) const {
  BenchmarkInstance b;
  b.id = spec.id;
  b.site_count = spec.sites;
  b.template_diversity = spec.diversity;
  b.seed = spec.seed;
  if (spec.templates) {
    for (int id : *spec.templates) b.library.push_back(find_template(templates, id));
  } else {
    b.library.assign(templates.begin(), templates.begin() + std::min<std::size_t>(templates.size(), spec.diversity));
  }
  return b;
}

const InstanceSpec& RunConfig::instance(std::string_view id) const {
  for (const auto& i : instances)
    if (i.id == id) return i;
  throw ConfigError(fmt::format("no instance named '{}'", id));
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(fmt::format("{}: parse error: {}", source, e.what()));
  }
  RunConfig cfg;
  Reader r;
  if (!r.object(root, std::string(source))) throw ConfigError(r.errors.front());
  r.only(root, "", {"templates", "grid", "instances", "anneal", "cost", "budget", "seed", "output_dir"});
  r.get(root, "", "seed", cfg.seed);
  r.get(root, "", "output_dir", cfg.output_dir);

  if (root.contains("templates")) {
    const Json& ts = root.at("templates");
    if (!ts.is_array()) {
      r.fail("templates", "expected an array");
    } else {
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string path = fmt::format("templates[{}]", i);
        Template t;
        if (!r.object(ts[i], path)) continue;
        r.only(ts[i], path, {"id", "width", "height", "port"});
        for (const char* key : {"id", "width", "height"})
          if (!ts[i].contains(key)) r.fail(Reader::join(path, key), "missing");
        r.get(ts[i], path, "id", t.id);
        r.get(ts[i], path, "width", t.width);
        r.get(ts[i], path, "height", t.height);
        if (ts[i].contains("port")) codec::read_port(r, ts[i].at("port"), Reader::join(path, "port"), t.port);
        r.check(t, path);
        cfg.templates.push_back(t);
      }
    }
  }
  if (root.contains("grid")) codec::read_grid(r, root.at("grid"), "grid", cfg.grid);
  r.check(cfg.grid, "grid");

  if (root.contains("anneal")) {
    const Json& a = root.at("anneal");
    if (r.object(a, "anneal")) {
      r.only(a, "anneal", {"iterations", "initial_temp", "cooling", "prioritize_largest"});
      r.get(a, "anneal", "iterations", cfg.anneal.iterations);
      r.get(a, "anneal", "initial_temp", cfg.anneal.initial_temp);
      r.get(a, "anneal", "cooling", cfg.anneal.cooling);
      r.get(a, "anneal", "prioritize_largest", cfg.anneal.prioritize_largest);
    }
  }
  r.check(cfg.anneal, "anneal");

  if (root.contains("cost")) {
    const Json& c = root.at("cost");
    if (r.object(c, "cost")) {
      r.only(c, "cost", {"density_weight", "aspect_weight"});
      r.get(c, "cost", "density_weight", cfg.density_weight);
      r.get(c, "cost", "aspect_weight", cfg.aspect_weight);
    }
  }
  if (cfg.density_weight.has_value() != cfg.aspect_weight.has_value()) {
    r.fail("cost", "density_weight and aspect_weight must both be set or both be null");
  } else if (auto cp = cfg.cost()) {
    r.check(*cp, "cost");
  }

  if (root.contains("budget")) {
    const Json& b = root.at("budget");
    if (r.object(b, "budget")) {
      r.only(b, "budget", {"placement_attempts", "routing_attempts", "time_limit_s"});
      r.get(b, "budget", "placement_attempts", cfg.budget.placement_attempts);
      r.get(b, "budget", "routing_attempts", cfg.budget.routing_attempts);
      r.get(b, "budget", "time_limit_s", cfg.budget.time_limit);
    }
  }
  r.check(cfg.budget, "budget");

  std::set<int> ids;
  for (const auto& t : cfg.templates)
    if (!ids.insert(t.id).second) r.fail("templates", fmt::format("duplicate template id {}", t.id));

  if (root.contains("instances")) {
    const Json& is = root.at("instances");
    if (!is.is_array()) {
      r.fail("instances", "expected an array");
    } else {
      std::set<std::string> names;
      for (std::size_t i = 0; i < is.size(); ++i) {
        const std::string path = fmt::format("instances[{}]", i);
        if (!r.object(is[i], path)) continue;
        InstanceSpec spec;
        spec.seed = cfg.seed;
        const Json& j = is[i];
        r.only(j, path, {"id", "sites", "diversity", "templates", "seed"});
        r.get(j, path, "id", spec.id);
        r.get(j, path, "sites", spec.sites);
        r.get(j, path, "diversity", spec.diversity);
        r.get(j, path, "seed", spec.seed);
        if (spec.id.empty()) r.fail(Reader::join(path, "id"), "missing or empty");
        if (!names.insert(spec.id).second) r.fail(Reader::join(path, "id"), fmt::format("duplicate instance '{}'", spec.id));
        if (spec.sites < 1) r.fail(Reader::join(path, "sites"), "must be >= 1");
        if (j.contains("templates") && !j.at("templates").is_null()) {
          const Json& tl = j.at("templates");
          if (!tl.is_array() || !std::all_of(tl.begin(), tl.end(), [](const Json& v) { return v.is_number_integer(); })) {
            r.fail(Reader::join(path, "templates"), "expected an array of template ids");
          } else {
            spec.templates = tl.get<std::vector<int>>();
            for (int id : *spec.templates)
              if (!ids.count(id)) r.fail(Reader::join(path, "templates"), fmt::format("unknown template id {}", id));
            if (!j.contains("diversity")) spec.diversity = static_cast<int>(spec.templates->size());
            if (spec.diversity != static_cast<int>(spec.templates->size())) {
              r.fail(Reader::join(path, "diversity"), "must equal the number of listed templates");
            }
          }
        } else if (spec.diversity < 1 || static_cast<std::size_t>(spec.diversity) > cfg.templates.size()) {
          r.fail(Reader::join(path, "diversity"),
                 fmt::format("must lie in [1, {}] (library size)", cfg.templates.size()));
        }
        cfg.instances.push_back(std::move(spec));
      }
    }
  }

  if (!r.errors.empty()) {
    std::string msg = fmt::format("{}: invalid configuration", source);
    for (const auto& e : r.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_file(path), path); }

std::string dump_config(const RunConfig& c) {
  Json root;
  Json ts = Json::array();
  for (const auto& t : c.templates) {
    Json j;
    j["id"] = t.id;
    j["width"] = t.width;
    j["height"] = t.height;
    j["port"] = codec::port_json(t.port);
    ts.push_back(j);
  }
  root["templates"] = ts;
  root["grid"] = codec::grid_json(c.grid);
  Json is = Json::array();
  for (const auto& i : c.instances) {
    Json j;
    j["id"] = i.id;
    j["sites"] = i.sites;
    j["diversity"] = i.diversity;
    j["templates"] = i.templates ? Json(*i.templates) : Json(nullptr);
    j["seed"] = i.seed;
    is.push_back(j);
  }
  root["instances"] = is;
  Json a;
  a["iterations"] = c.anneal.iterations;
  a["initial_temp"] = c.anneal.initial_temp ? Json(*c.anneal.initial_temp) : Json(nullptr);
  a["cooling"] = c.anneal.cooling;
  a["prioritize_largest"] = c.anneal.prioritize_largest;
  root["anneal"] = a;
  Json cost;
  cost["density_weight"] = c.density_weight ? Json(*c.density_weight) : Json(nullptr);
  cost["aspect_weight"] = c.aspect_weight ? Json(*c.aspect_weight) : Json(nullptr);
  root["cost"] = cost;
  Json b;
  b["placement_attempts"] = c.budget.placement_attempts;
  b["routing_attempts"] = c.budget.routing_attempts;
  b["time_limit_s"] = c.budget.time_limit ? Json(*c.budget.time_limit) : Json(nullptr);
  root["budget"] = b;
  root["seed"] = c.seed;
  root["output_dir"] = c.output_dir;
  return root.dump(2) + "\n";
}

std::vector<Template> benchmark_templates() {
  // Ports centered on the north edge.
  const int dims[][2] = {{92, 92}, {185, 185}, {185, 138}, {462, 462}, {1574, 1037}};
  std::vector<Template> out;
  int id = 0;
  for (const auto& d : dims) {
    Template t;
    t.id = id++;
    t.width = d[0];
    t.height = d[1];
    t.port = {Side::kNorth, d[0] / 2 - 1, 2};
    out.push_back(t);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write '{}'", path));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(fmt::format("write to '{}' failed", path));
}

}  // namespace sitepack
