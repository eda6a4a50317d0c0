// Copyright 2026 The sdcdrive Authors.
//
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

// Command-line entry point: run, gen-logs, score, render, make-weights.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdcdrive/control/nn.hpp"
#include "sdcdrive/harness/run.hpp"
#include "sdcdrive/scoring/scoring.hpp"
#include "sdcdrive/scoring/trace.hpp"
#include "sdcdrive/world/drive_log.hpp"
#include "sdcdrive/world/map_io.hpp"

namespace {

using nlohmann::json;
using sdcdrive::RunConfig;

struct RunFlags {
  std::string map;
  std::vector<std::string> routes;
  std::vector<std::string> route_filter;
  std::string scenario = "1W-N";
  std::string scenario_file;
  std::string variant = "Proposed";
  std::string weights;
  std::vector<std::string> weathers;
  std::uint64_t seed = 0;
  int repeats = 0;
  std::string out;
  std::string waypoints = "oracle";
  std::string mlp = "oracle";
  std::string features = "oracle";
  bool clean_perception = false;
  double dt = 0.05;
  double log_period = 0.5;
  double max_time = 600.0;
  std::vector<double> alpha;
  bool write_logs = false;
  bool no_traces = false;
  int jobs = 1;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--map", f.map, "Map file")->required();
  cmd->add_option("--routes", f.routes, "Route-set file (repeatable)")->required();
  cmd->add_option("--route", f.route_filter, "Only these route names (repeatable)");
  cmd->add_option("--scenario", f.scenario, "1W-N | 1W-A | AW-N | AW-A");
  cmd->add_option("--scenario-file", f.scenario_file, "Scenario config file (overrides kind, dt, log period, seed)");
  cmd->add_option("--variant", f.variant, "Proposed | MLP | PID | Both | NoSDC");
  cmd->add_option("--weights", f.weights, "Weight bundle");
  cmd->add_option("--weather", f.weathers, "Weather preset (repeatable)");
  cmd->add_option("--seed", f.seed, "Run seed");
  cmd->add_option("--repeats", f.repeats, "Repeats per weather (default 3 for 1W, 1 for AW)");
  cmd->add_option("--out", f.out, "Output directory")->required();
  cmd->add_option("--waypoints", f.waypoints, "Waypoint source: oracle | network");
  cmd->add_option("--mlp", f.mlp, "MLP agent source: oracle | network");
  cmd->add_option("--features", f.features, "Network features: oracle | random");
  cmd->add_flag("--clean-perception", f.clean_perception, "Skip weather corruption of the sensors");
  cmd->add_option("--dt", f.dt, "Simulation step, s");
  cmd->add_option("--log-period", f.log_period, "Log period, s");
  cmd->add_option("--max-time", f.max_time, "Episode time budget, s");
  cmd->add_option("--alpha", f.alpha, "Seven loss weights (SEG TL SS ST TH BR WP)")->expected(7);
  cmd->add_flag("--write-logs", f.write_logs, "Write per-frame drive logs");
  cmd->add_flag("--no-traces", f.no_traces, "Do not write replayable traces");
  cmd->add_option("--jobs", f.jobs, "Worker threads");
}

RunConfig to_config(const RunFlags& f) {
  RunConfig c;
  c.map_path = f.map;
  for (const auto& r : f.routes) c.route_sets.emplace_back(r);
  c.route_filter = f.route_filter;
  c.scenario = sdcdrive::parse_scenario_kind(f.scenario);
  c.dt = f.dt;
  c.log_period = f.log_period;
  c.seed = f.seed;
  if (!f.scenario_file.empty()) {
    const sdcdrive::ScenarioConfig s = sdcdrive::load_scenario_config(f.scenario_file);
    c.scenario = s.kind;
    c.dt = s.dt;
    c.log_period = s.log_period;
    c.seed = s.seed;
    if (f.weathers.empty()) c.weathers = {s.weather};
  }
  c.variant = sdcdrive::parse_policy_variant(f.variant);
  if (!f.weights.empty()) c.weights_path = f.weights;
  if (!f.weathers.empty()) c.weathers = f.weathers;
  c.repeats = f.repeats;
  c.out_dir = f.out;
  c.waypoints = sdcdrive::parse_waypoint_source(f.waypoints);
  c.mlp = sdcdrive::parse_mlp_source(f.mlp);
  c.features = sdcdrive::parse_feature_source(f.features);
  c.weather_noise = !f.clean_perception;
  c.max_time = f.max_time;
  if (!f.alpha.empty()) std::copy(f.alpha.begin(), f.alpha.end(), c.alpha.alpha.begin());
  c.write_logs = f.write_logs;
  c.write_traces = !f.no_traces;
  c.jobs = f.jobs;
  return c;
}

void print_run_summary(const RunConfig& c, const sdcdrive::RunReport& r) {
  std::printf("episodes %zu  DS %.3f +/- %.3f  RC %.3f +/- %.3f  IP %.4f +/- %.4f\n", r.results.size(), r.ds.mean,
              r.ds.std, r.rc.mean, r.rc.std, r.ip.mean, r.ip.std);
  std::printf("results in %s\n", c.out_dir.string().c_str());
}

int emit_error(const std::string& kind, const std::string& message, int code) {
  const json err = {{"error", {{"type", kind}, {"message", message}}}};
  std::cerr << err.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop driving simulator and evaluation harness"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Closed-loop episodes over route sets and weathers");
  add_run_flags(run, run_flags);

  RunFlags log_flags;
  bool predict = false;
  auto* gen = app.add_subcommand("gen-logs", "Expert-driven reference logs");
  add_run_flags(gen, log_flags);
  gen->add_flag("--predict", predict, "Also log the configured policy on the expert frames");

  std::string pred_dir, ref_dir, trace_path, score_map, score_routes, score_route, score_out;
  std::vector<double> score_alpha;
  auto* score = app.add_subcommand("score", "Task metrics between logs, or replay a trace");
  score->add_option("--pred", pred_dir, "Prediction log directory");
  score->add_option("--ref", ref_dir, "Reference log directory");
  score->add_option("--trace", trace_path, "Trace file to replay");
  score->add_option("--map", score_map, "Map file (trace replay)");
  score->add_option("--routes", score_routes, "Route-set file (trace replay)");
  score->add_option("--route", score_route, "Route name (trace replay; default: the trace's route)");
  score->add_option("--alpha", score_alpha, "Seven loss weights")->expected(7);
  score->add_option("--out", score_out, "Also write the record to this file");

  std::string render_log, render_out;
  bool render_sdc = false;
  auto* render = app.add_subcommand("render", "Per-frame depth | semantic | SDC composites");
  render->add_option("--log", render_log, "Drive log directory")->required();
  render->add_option("--out", render_out, "Output directory")->required();
  render->add_flag("--sdc", render_sdc, "Also dump the SDC tensors");

  std::string kind = "random", weights_out;
  std::uint64_t weights_seed = 0;
  double dx = 0.0, dy = 0.0;
  std::size_t features = 384, hidden = 232, mlp_width = 64;
  auto* mk = app.add_subcommand("make-weights", "Write a weight bundle");
  mk->add_option("--kind", kind, "random | zero | deltas");
  mk->add_option("--seed", weights_seed, "Seed for random bundles");
  mk->add_option("--dx", dx, "Per-step lateral delta (deltas kind)");
  mk->add_option("--dy", dy, "Per-step forward delta (deltas kind)");
  mk->add_option("--features", features, "Feature size");
  mk->add_option("--hidden", hidden, "Hidden size");
  mk->add_option("--mlp-width", mlp_width, "MLP hidden width");
  mk->add_option("--out", weights_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", e.what(), 2);
  }

  try {
    if (*run) {
      const RunConfig c = to_config(run_flags);
      print_run_summary(c, sdcdrive::run_scenario(c));
    } else if (*gen) {
      const RunConfig c = to_config(log_flags);
      print_run_summary(c, sdcdrive::generate_expert_logs(c, predict));
    } else if (*score) {
      std::string record;
      if (!trace_path.empty()) {
        if (score_map.empty() || score_routes.empty()) {
          throw std::invalid_argument("trace replay needs --map and --routes");
        }
        const auto map = sdcdrive::load_map(score_map);
        const auto set = sdcdrive::load_route_set(score_routes);
        const sdcdrive::Trace trace = sdcdrive::read_trace(trace_path);
        const std::string name = score_route.empty() ? trace.route : score_route;
        std::shared_ptr<const sdcdrive::RouteSpec> route;
        for (const auto& r : set.routes) {
          if (r->name() == name) route = r;
        }
        if (!route) throw std::invalid_argument("route '" + name + "' not in " + score_routes);
        const sdcdrive::RouteResult result = sdcdrive::score_route(trace, *route, *map);
        record = sdcdrive::to_json(result, {result.route, "", 0, 0}, {});
      } else {
        if (pred_dir.empty() || ref_dir.empty()) throw std::invalid_argument("score needs --pred and --ref, or --trace");
        sdcdrive::LossWeights alpha;
        if (!score_alpha.empty()) std::copy(score_alpha.begin(), score_alpha.end(), alpha.alpha.begin());
        record = sdcdrive::to_json(
            sdcdrive::score_logs(sdcdrive::read_drive_log(pred_dir), sdcdrive::read_drive_log(ref_dir), alpha));
      }
      std::cout << record << std::endl;
      if (!score_out.empty()) {
        std::ofstream out(score_out, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + score_out);
        out << record << '\n';
      }
    } else if (*render) {
      const auto n = sdcdrive::render_episode(sdcdrive::read_drive_log(render_log), render_out, render_sdc);
      std::printf("rendered %zu frames to %s\n", n, render_out.c_str());
    } else if (*mk) {
      sdcdrive::WeightBundle bundle;
      if (kind == "random") {
        bundle = sdcdrive::WeightBundle::random(weights_seed, features, hidden, mlp_width);
      } else if (kind == "zero") {
        bundle = sdcdrive::WeightBundle::zeros(features, hidden, mlp_width);
      } else if (kind == "deltas") {
        // Zero network whose head bias emits a constant delta per step.
        bundle = sdcdrive::WeightBundle::zeros(features, hidden, mlp_width);
        auto& bias = bundle.mutable_tensor("head.bias").values;
        bias[0] = static_cast<float>(dx);
        bias[1] = static_cast<float>(dy);
      } else {
        throw std::invalid_argument("unknown weight kind: " + kind);
      }
      bundle.save(std::filesystem::path(weights_out));
      std::printf("wrote %s\n", weights_out.c_str());
    }
  } catch (const std::invalid_argument& e) {
    return emit_error("invalid_argument", e.what(), 2);
  } catch (const std::exception& e) {
    return emit_error("runtime_error", e.what(), 1);
  }
  return 0;
}
