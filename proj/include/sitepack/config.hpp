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

#ifndef SITEPACK_CONFIG_HPP_
#define SITEPACK_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sitepack/core.hpp"
#include "sitepack/floorplan.hpp"
#include "sitepack/placement.hpp"

namespace sitepack {

// Bad or inconsistent configuration input (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct InstanceSpec {
  std::string id;
  int sites = 1;
  int diversity = 1;
  // Explicit template ids; when absent the first `diversity` library entries.
  std::optional<std::vector<int>> templates;
  std::uint64_t seed = 1;
};

struct RunConfig {
  std::vector<Template> templates;
  GridConfig grid;
  std::vector<InstanceSpec> instances;
  AnnealParams anneal;
  std::optional<double> density_weight;  // both absent: derived from the blocks
  std::optional<double> aspect_weight;
  FloorplanBudget budget;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  std::optional<CostParams> cost() const;
  BenchmarkInstance benchmark_instance(const InstanceSpec& spec) const;
  const InstanceSpec& instance(std::string_view id) const;
};

// Parses and validates a JSON document. Throws ConfigError listing every
// violation found, one per line.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::string& path);

// Canonical JSON with every default spelled out; parse_config(dump_config(c))
// dumps to the same bytes.
std::string dump_config(const RunConfig& config);

// The five-template benchmark set (track units).
std::vector<Template> benchmark_templates();

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace sitepack

#endif  // SITEPACK_CONFIG_HPP_
