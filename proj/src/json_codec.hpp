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

// JSON helpers shared by the config and layout readers. Not installed.
#ifndef SITEPACK_SRC_JSON_CODEC_HPP_
#define SITEPACK_SRC_JSON_CODEC_HPP_

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "sitepack/core.hpp"

namespace sitepack::codec {

using Json = nlohmann::ordered_json;

// Collects every problem instead of stopping at the first.
class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& what) { errors.push_back(fmt::format("{}: {}", path, what)); }

  bool object(const Json& j, const std::string& path) {
    if (j.is_object()) return true;
    fail(path, "expected an object");
    return false;
  }

  void only(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) return;
    for (const auto& [key, value] : j.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
        fail(join(path, key), "unknown key");
      }
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  void get(const Json& j, const std::string& path, const char* key, int& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (v.is_number_integer() && v.get<long long>() >= INT32_MIN && v.get<long long>() <= INT32_MAX) {
      out = v.get<int>();
    } else {
      fail(join(path, key), "expected an integer");
    }
  }
  void get(const Json& j, const std::string& path, const char* key, std::uint64_t& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
      out = v.get<std::uint64_t>();
    } else {
      fail(join(path, key), "expected a non-negative integer");
    }
  }
  void get(const Json& j, const std::string& path, const char* key, double& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (v.is_number()) {
      out = v.get<double>();
    } else {
      fail(join(path, key), "expected a number");
    }
  }
  void get(const Json& j, const std::string& path, const char* key, std::optional<double>& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (v.is_null()) {
      out.reset();
    } else if (v.is_number()) {
      out = v.get<double>();
    } else {
      fail(join(path, key), "expected a number or null");
    }
  }
  void get(const Json& j, const std::string& path, const char* key, bool& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (v.is_boolean()) {
      out = v.get<bool>();
    } else {
      fail(join(path, key), "expected true or false");
    }
  }
  void get(const Json& j, const std::string& path, const char* key, std::string& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (v.is_string()) {
      out = v.get<std::string>();
    } else {
      fail(join(path, key), "expected a string");
    }
  }
  void get(const Json& j, const std::string& path, const char* key, Side& out) {
    if (!j.contains(key)) return;
    const Json& v = j.at(key);
    if (!v.is_string()) {
      fail(join(path, key), "expected a side name");
      return;
    }
    try {
      out = side_from_string(v.get<std::string>());
    } catch (const Error& e) {
      fail(join(path, key), e.what());
    }
  }

  // Runs a validate() member, recording its complaint under `path`.
  template <typename T>
  void check(const T& value, const std::string& path) {
    try {
      value.validate();
    } catch (const Error& e) {
      const std::string what = e.what();
      if (what.rfind(path + ":", 0) == 0) {
        errors.push_back(what);
      } else {
        fail(path, what);
      }
    }
  }
};

inline Json port_json(const PortSpec& p) {
  Json j;
  j["side"] = std::string(to_string(p.side));
  j["offset"] = p.offset;
  j["length"] = p.length;
  return j;
}

inline void read_port(Reader& r, const Json& j, const std::string& path, PortSpec& p) {
  if (!r.object(j, path)) return;
  r.only(j, path, {"side", "offset", "length"});
  r.get(j, path, "side", p.side);
  r.get(j, path, "offset", p.offset);
  r.get(j, path, "length", p.length);
}

inline Json grid_json(const GridConfig& g) {
  Json j;
  j["track_width"] = g.track_width;
  j["spacing"] = g.spacing;
  j["margin_x"] = g.margin_x;
  j["margin_y"] = g.margin_y;
  j["max_aspect"] = g.max_aspect;
  j["outer_bound"] = g.outer_bound ? Json::array({g.outer_bound->first, g.outer_bound->second}) : Json(nullptr);
  Json c;
  c["width"] = g.controller_width;
  c["height"] = g.controller_height;
  c["port"] = port_json(g.controller_port);
  j["controller"] = c;
  j["pitch"] = g.pitch;
  return j;
}

inline void read_grid(Reader& r, const Json& j, const std::string& path, GridConfig& g) {
  if (!r.object(j, path)) return;
  r.only(j, path, {"track_width", "spacing", "margin_x", "margin_y", "max_aspect", "outer_bound", "controller", "pitch"});
  r.get(j, path, "track_width", g.track_width);
  r.get(j, path, "spacing", g.spacing);
  r.get(j, path, "margin_x", g.margin_x);
  r.get(j, path, "margin_y", g.margin_y);
  r.get(j, path, "max_aspect", g.max_aspect);
  r.get(j, path, "pitch", g.pitch);
  if (j.contains("outer_bound")) {
    const Json& ob = j.at("outer_bound");
    if (ob.is_null()) {
      g.outer_bound.reset();
    } else if (ob.is_array() && ob.size() == 2 && ob[0].is_number_integer() && ob[1].is_number_integer()) {
      g.outer_bound = std::pair{ob[0].get<int>(), ob[1].get<int>()};
    } else {
      r.fail(Reader::join(path, "outer_bound"), "expected null or [width, height]");
    }
  }
  if (j.contains("controller")) {
    const Json& c = j.at("controller");
    const std::string cp = Reader::join(path, "controller");
    if (r.object(c, cp)) {
      r.only(c, cp, {"width", "height", "port"});
      r.get(c, cp, "width", g.controller_width);
      r.get(c, cp, "height", g.controller_height);
      if (c.contains("port")) read_port(r, c.at("port"), Reader::join(cp, "port"), g.controller_port);
    }
  }
}

}  // namespace sitepack::codec

#endif  // SITEPACK_SRC_JSON_CODEC_HPP_
