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

#include "sitepack/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "sitepack/config.hpp"
#include "sitepack/drc_cover.hpp"
#include "sitepack/floorplan.hpp"
#include "sitepack/interconnect.hpp"
#include "sitepack/layout_io.hpp"
#include "sitepack/metrics.hpp"
#include "sitepack/routing.hpp"
#include "sitepack/svg.hpp"

namespace sitepack {

namespace fs = std::filesystem;

namespace {

// --out-dir wins, then SITEPACK_OUT_DIR, then the config, then "out".
std::string resolve_out_dir(const std::string& flag, const std::optional<RunConfig>& cfg) {
  std::string dir = "out";
  if (cfg) dir = cfg->output_dir;
  if (const char* env = std::getenv("SITEPACK_OUT_DIR"); env && *env) dir = env;
  if (!flag.empty()) dir = flag;
  fs::create_directories(dir);
  return dir;
}

std::string in_dir(const std::string& dir, const char* name) { return (fs::path(dir) / name).string(); }

struct Common {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool timing = false;
  double scale = 2.0;
};

int cmd_pack(const Common& c, const std::string& instance_id, std::ostream& out) {
  const RunConfig cfg = load_config(c.config);
  if (cfg.instances.empty()) throw ConfigError(fmt::format("{}: no instances defined", c.config));
  const InstanceSpec& spec = instance_id.empty() ? cfg.instances.front() : cfg.instance(instance_id);
  BenchmarkInstance inst = cfg.benchmark_instance(spec);
  if (c.seed) inst.seed = *c.seed;
  const std::string dir = resolve_out_dir(c.out_dir, cfg);

  FloorplanOptions opts;
  opts.budget = cfg.budget;
  opts.anneal = cfg.anneal;
  opts.cost = cfg.cost();
  opts.seed = inst.seed;
  opts.record_time = c.timing;
  const auto sites = make_sites(inst);
  const FloorplanResult fp = floorplan(sites, inst.library, cfg.grid, opts);

  BenchmarkTable table;
  table.rows.push_back({inst.id, inst.site_count, inst.template_diversity, fp.metrics, {}});
  write_file(in_dir(dir, "layout.json"), layout_to_json(fp.layout));
  write_file(in_dir(dir, "metrics.csv"), metrics_csv(table));
  write_file(in_dir(dir, "layout.svg"), render_svg(fp.layout, {c.scale}));
  out << fmt::format("{}: util {:.2f}% track {:.2f}% bbox {} (attempt {})\n", inst.id, fp.metrics.util_pct,
                     fp.metrics.track_pct, fp.metrics.bbox_area, fp.best_attempt);
  return kExitOk;
}

int cmd_route(const Common& c, const std::string& layout_path, int attempts, std::ostream& out) {
  Layout layout = layout_from_json(read_file(layout_path), layout_path);
  layout.routes.clear();
  const std::string dir = resolve_out_dir(c.out_dir, std::nullopt);
  const auto routed = route_all(layout, attempts, c.seed.value_or(1));
  if (!routed) {
    out << "routing failed\n";
    return kExitSolverFailure;
  }
  layout.routes = routed->routes;
  BenchmarkTable table;
  table.rows.push_back({"route", static_cast<int>(layout.sites.size()), 0, compute_metrics(layout, 0.0), {}});
  write_file(in_dir(dir, "routed.json"), layout_to_json(layout));
  write_file(in_dir(dir, "metrics.csv"), metrics_csv(table));
  write_file(in_dir(dir, "routed.svg"), render_svg(layout, {c.scale}));
  out << fmt::format("routed {} legs with {} (attempt {})\n", layout.routes.size(), to_string(routed->strategy),
                     routed->attempt);
  return kExitOk;
}

int cmd_drc(const Common& c, int sweep, double epsilon, int track_length, std::ostream& out) {
  std::optional<RunConfig> cfg;
  std::vector<Template> library;
  if (!c.config.empty()) {
    cfg = load_config(c.config);
    library = cfg->templates;
  } else if (sweep >= 0) {
    library = sweep_library(sweep);
  } else {
    throw ConfigError("drc-cover needs --config or --sweep");
  }
  const std::string dir = resolve_out_dir(c.out_dir, cfg);
  const auto scenarios = enumerate_scenarios(library);
  CoverOptions opts;
  opts.epsilon = epsilon;
  opts.seed = c.seed.value_or(1);
  opts.track_length = track_length;
  const CoverLayout layout = greedy_cover(scenarios, library, opts);
  const CoverageReport report = verify_coverage(layout, scenarios);
  write_file(in_dir(dir, "coverage.csv"), coverage_csv(report));
  write_file(in_dir(dir, "cover.svg"), render_cover_svg(layout, {c.scale}));
  out << fmt::format("{} scenarios, coverage {:.1f}%, avg occurrence {:.3f}, area {}\n", scenarios.size(),
                     report.coverage_pct, report.avg_occurrence, report.layout_area);
  return report.missing.empty() ? kExitOk : kExitSolverFailure;
}

int cmd_simulate(const Common& c, const std::string& script, std::ostream& out) {
  const std::string text = read_file(script);
  ScriptResult result;
  try {
    result = run_script(text);
  } catch (const Error& e) {
    throw ConfigError(fmt::format("{}: {}", script, e.what()));
  }
  const std::string dir = resolve_out_dir(c.out_dir, std::nullopt);
  std::string log;
  for (const auto& l : result.log) log += l + "\n";
  for (const auto& f : result.faults) log += "fault: " + f + "\n";
  write_file(in_dir(dir, "trace.csv"), trace_csv(result.trace));
  write_file(in_dir(dir, "simulate.log"), log);
  out << log;
  return kExitOk;
}

int cmd_bench(const Common& c, const std::string& out_file, std::ostream& out) {
  const RunConfig cfg = load_config(c.config);
  std::vector<BenchmarkInstance> instances;
  for (const auto& spec : cfg.instances) {
    instances.push_back(cfg.benchmark_instance(spec));
    if (c.seed) instances.back().seed = *c.seed;
  }
  const std::string dir = resolve_out_dir(c.out_dir, cfg);
  BenchmarkSettings settings;
  settings.grid = cfg.grid;
  settings.budget = cfg.budget;
  settings.anneal = cfg.anneal;
  settings.cost = cfg.cost();
  settings.record_time = c.timing;
  const BenchmarkTable table = run_benchmark(instances, settings);
  const std::string path = out_file.empty() ? in_dir(dir, "metrics.csv") : out_file;
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  write_file(path, metrics_csv(table));
  bool failed = false;
  for (const auto& row : table.rows) {
    if (row.metrics) {
      out << fmt::format("{}: util {:.2f}%\n", row.id, row.metrics->util_pct);
    } else {
      out << fmt::format("{}: failed ({})\n", row.id, row.error);
      failed = true;
    }
  }
  if (table.mean_util) {
    out << fmt::format("mean util {:.2f}% +/- {:.2f}\n", *table.mean_util, table.stddev_util.value_or(0.0));
  }
  return failed ? kExitSolverFailure : kExitOk;
}

int cmd_render(const Common& c, const std::string& layout_path, const std::string& out_file, std::ostream& out) {
  const Layout layout = layout_from_json(read_file(layout_path), layout_path);
  std::string path = out_file;
  if (path.empty()) path = in_dir(resolve_out_dir(c.out_dir, std::nullopt), "layout.svg");
  write_file(path, render_svg(layout, {c.scale}));
  out << "wrote " << path << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sitepack: templated chip-site floorplanning toolkit"};
  app.require_subcommand(1);
  Common c;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", c.out_dir, "Output directory (overrides SITEPACK_OUT_DIR and the config)");
    sub->add_option("--seed", seed, "RNG seed override");
    sub->add_option("--scale", c.scale, "SVG pixels per track")->check(CLI::PositiveNumber);
  };

  std::string instance, layout_path, script, out_file;
  int attempts = 3, sweep = -1, track_length = 3;
  double epsilon = 0.1;

  auto* pack = app.add_subcommand("pack", "Place and route one instance");
  add_common(pack);
  pack->add_option("--config", c.config, "Run configuration (JSON)")->required();
  pack->add_option("--instance", instance, "Instance id (default: first)");
  pack->add_flag("--timing", c.timing, "Record wall-clock solver time (output is then not reproducible)");

  auto* route = app.add_subcommand("route", "Route an existing placement");
  add_common(route);
  route->add_option("--layout", layout_path, "Layout JSON")->required();
  route->add_option("--attempts", attempts, "Routing attempts")->check(CLI::PositiveNumber);

  auto* drc = app.add_subcommand("drc-cover", "Enumerate DRC scenarios and build a covering layout");
  add_common(drc);
  drc->add_option("--config", c.config, "Run configuration supplying the template library");
  drc->add_option("--sweep", sweep, "Use the synthetic N-template library instead")->check(CLI::NonNegativeNumber);
  drc->add_option("--epsilon", epsilon, "Exploration probability")->check(CLI::Range(0.0, 1.0));
  drc->add_option("--track-length", track_length, "Track segment length")->check(CLI::PositiveNumber);

  auto* sim = app.add_subcommand("simulate", "Run an interconnect scenario script");
  add_common(sim);
  sim->add_option("--script", script, "Script (.ops)")->required();

  auto* bench = app.add_subcommand("bench", "Run every instance and write the metrics table");
  add_common(bench);
  bench->add_option("--instances,--config", c.config, "Run configuration listing instances")->required();
  bench->add_option("--out", out_file, "Metrics CSV path (default: <out-dir>/metrics.csv)");
  bench->add_flag("--timing", c.timing, "Record wall-clock solver time");

  auto* render = app.add_subcommand("render", "Render a layout JSON as SVG");
  add_common(render);
  render->add_option("--layout", layout_path, "Layout JSON")->required();
  render->add_option("--out", out_file, "SVG path (default: <out-dir>/layout.svg)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed")) c.seed = seed;
  }

  try {
    if (pack->parsed()) return cmd_pack(c, instance, out);
    if (route->parsed()) return cmd_route(c, layout_path, attempts, out);
    if (drc->parsed()) return cmd_drc(c, sweep, epsilon, track_length, out);
    if (sim->parsed()) return cmd_simulate(c, script, out);
    if (bench->parsed()) return cmd_bench(c, out_file, out);
    if (render->parsed()) return cmd_render(c, layout_path, out_file, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitConfigError;
}

}  // namespace sitepack
