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

#include "sdcdrive/harness/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "sdcdrive/common/image_io.hpp"
#include "sdcdrive/common/tensor_io.hpp"
#include "sdcdrive/harness/features.hpp"
#include "sdcdrive/sdc/sdc.hpp"
#include "sdcdrive/sensor/depth_codec.hpp"
#include "sdcdrive/sensor/weather.hpp"

namespace sdcdrive {
namespace {

using nlohmann::json;

EpisodeConfig episode_template(const RunConfig& c) {
  EpisodeConfig e;
  e.variant = c.variant;
  e.waypoints = c.waypoints;
  e.mlp = c.mlp;
  e.features = c.features;
  e.weather_noise = c.weather_noise;
  e.alpha = c.alpha;
  e.max_time = c.max_time;
  e.scenario.kind = c.scenario;
  e.scenario.dt = c.dt;
  e.scenario.log_period = c.log_period;
  return e;
}

bool run_needs_weights(const RunConfig& c, bool with_predictions, bool expert_driver) {
  const EpisodeConfig e = episode_template(c);
  if (!expert_driver) return e.needs_network();
  return with_predictions && (c.waypoints == WaypointSource::kNetwork || c.mlp == MlpSource::kNetwork);
}

struct Job {
  EpisodeKey key;
  EpisodeConfig config;
};

struct Loaded {
  std::shared_ptr<const WorldMap> map;
  std::vector<std::shared_ptr<const RouteSpec>> routes;
  std::shared_ptr<const WeightBundle> weights;
};

Loaded load_inputs(const RunConfig& c) {
  Loaded in;
  in.map = load_map(c.map_path);
  std::set<std::string> seen;
  for (const auto& path : c.route_sets) {
    const RouteSet set = load_route_set(path);
    if (!set.map.empty() && set.map != in.map->name) {
      throw std::invalid_argument("route set '" + set.name + "' belongs to map '" + set.map + "', not '" +
                                  in.map->name + "'");
    }
    for (const auto& r : set.routes) {
      if (!c.route_filter.empty() &&
          std::find(c.route_filter.begin(), c.route_filter.end(), r->name()) == c.route_filter.end()) {
        continue;
      }
      if (!seen.insert(r->name()).second) throw std::invalid_argument("duplicate route name '" + r->name() + "'");
      in.routes.push_back(r);
    }
  }
  for (const auto& name : c.route_filter) {
    if (!seen.count(name)) throw std::invalid_argument("route '" + name + "' not found in the route sets");
  }
  if (in.routes.empty()) throw std::invalid_argument("no routes selected");
  if (c.weights_path) in.weights = std::make_shared<const WeightBundle>(WeightBundle::load(*c.weights_path));
  return in;
}

std::vector<Job> plan_jobs(const RunConfig& c, const Loaded& in, Driver driver, bool predictions) {
  std::vector<Job> jobs;
  const auto weathers = c.resolved_weathers();
  const int repeats = c.resolved_repeats();
  for (std::size_t w = 0; w < weathers.size(); ++w) {
    for (int k = 0; k < repeats; ++k) {
      for (std::size_t r = 0; r < in.routes.size(); ++r) {
        Job job;
        job.key = {in.routes[r]->name(), weathers[w], k, episode_seed(c.seed, r, w, k)};
        job.config = episode_template(c);
        job.config.map = in.map;
        job.config.route = in.routes[r];
        job.config.weights = in.weights;
        job.config.scenario.weather = weathers[w];
        job.config.scenario.seed = job.key.seed;
        job.config.driver = driver;
        job.config.record_log = c.write_logs || driver == Driver::kExpert;
        job.config.record_prediction = predictions;
        jobs.push_back(std::move(job));
      }
    }
  }
  return jobs;
}

// Runs every job on a small worker pool; results land at their job index so
// the output order never depends on scheduling.
std::vector<EpisodeResult> run_jobs(const std::vector<Job>& jobs, int workers,
                                    const std::function<void(std::size_t, EpisodeResult&)>& sink) {
  std::vector<EpisodeResult> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_episode(jobs[i].config);
        results[i].result.repeat = jobs[i].key.repeat;
        sink(i, results[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

Spread spread(const std::vector<double>& v) {
  Spread s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(var / static_cast<double>(v.size()));
  return s;
}

RunReport assemble(const std::vector<Job>& jobs, std::vector<EpisodeResult>& episodes) {
  RunReport report;
  std::map<std::pair<std::string, int>, std::vector<RouteResult>> by_group;
  std::vector<std::pair<std::string, int>> order;
  MetricAccumulator metrics;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    report.keys.push_back(jobs[i].key);
    report.results.push_back(episodes[i].result);
    report.stats.push_back(episodes[i].stats);
    const auto g = std::make_pair(jobs[i].key.weather, jobs[i].key.repeat);
    if (!by_group.count(g)) order.push_back(g);
    by_group[g].push_back(episodes[i].result);
    metrics.merge(episodes[i].metric_frames);
  }
  std::vector<double> ds, rc, ip;
  for (const auto& g : order) {
    const ScoreAggregate agg = driving_score(by_group[g]);
    report.groups.push_back({g.first, g.second, agg});
    ds.push_back(agg.ds);
    rc.push_back(agg.rc);
    ip.push_back(agg.ip);
  }
  report.ds = spread(ds);
  report.rc = spread(rc);
  report.ip = spread(ip);
  if (metrics.frames() > 0) report.metrics = metrics.report(jobs.front().config.alpha.alpha);
  return report;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

RunReport execute(const RunConfig& config, Driver driver, bool predictions) {
  config.validate();
  if (run_needs_weights(config, predictions, driver == Driver::kExpert) && !config.weights_path) {
    throw std::invalid_argument("selected waypoint/MLP sources need a weight bundle (--weights)");
  }
  const Loaded in = load_inputs(config);
  const std::vector<Job> jobs = plan_jobs(config, in, driver, predictions);
  for (const Job& j : jobs) j.config.validate();

  std::filesystem::create_directories(config.out_dir);
  auto sink = [&](std::size_t i, EpisodeResult& r) {
    const std::string name = jobs[i].key.name();
    if (config.write_traces) {
      std::filesystem::create_directories(config.out_dir / "traces");
      write_trace(config.out_dir / "traces" / (name + ".json"), r.trace);
    }
    if (r.log) {
      const auto dir = config.out_dir / "logs" / name;
      write_drive_log(driver == Driver::kExpert ? dir / "reference" : dir, *r.log);
      r.log.reset();
    }
    if (r.prediction_log) {
      write_drive_log(config.out_dir / "logs" / name / "prediction", *r.prediction_log);
      r.prediction_log.reset();
    }
    // Traces are on disk; keep memory flat on long runs.
    r.trace.samples.clear();
    r.trace.samples.shrink_to_fit();
  };
  std::vector<EpisodeResult> episodes = run_jobs(jobs, config.jobs, sink);
  RunReport report = assemble(jobs, episodes);

  std::string lines;
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    lines += to_json(report.results[i], report.keys[i], report.stats[i]) + "\n";
  }
  write_text(config.out_dir / "results.jsonl", lines);
  write_text(config.out_dir / "summary.json", summary_json(config, report) + "\n");
  return report;
}

json metrics_json(const MetricReport& m) {
  json iou = json::object();
  for (int c = 0; c < kNumClasses; ++c) iou[std::string(class_name(c))] = m.iou_per_class[static_cast<std::size_t>(c)];
  return {{"frames", m.frames},
          {"iou_per_class", iou},
          {"mean_iou", m.mean_iou},
          {"accuracy_tl", m.accuracy_tl},
          {"accuracy_ss", m.accuracy_ss},
          {"mae_steering", m.mae_steering},
          {"mae_throttle", m.mae_throttle},
          {"mae_brake", m.mae_brake},
          {"mae_waypoints", m.mae_waypoints},
          {"loss",
           {{"seg", m.losses[0]},
            {"tl", m.losses[1]},
            {"ss", m.losses[2]},
            {"st", m.losses[3]},
            {"th", m.losses[4]},
            {"br", m.losses[5]},
            {"wp", m.losses[6]},
            {"total", m.total}}}};
}

std::uint8_t depth_to_gray(double d) {
  const double v = 1.0 - std::log1p(d) / std::log1p(kDepthRange);
  return static_cast<std::uint8_t>(std::clamp(std::lround(255.0 * v), 0L, 255L));
}

}  // namespace

std::string EpisodeKey::name() const { return route + "__" + weather + "__r" + std::to_string(repeat); }

std::vector<std::string> RunConfig::resolved_weathers() const {
  if (!weathers.empty()) return weathers;
  if (is_all_weather(scenario)) return weather_names();
  return {"ClearNoon"};
}

int RunConfig::resolved_repeats() const {
  if (repeats > 0) return repeats;
  return is_all_weather(scenario) ? 1 : 3;
}

void RunConfig::validate() const {
  if (!std::filesystem::is_regular_file(map_path)) throw std::invalid_argument("map file not found: " + map_path.string());
  if (route_sets.empty()) throw std::invalid_argument("at least one route set is required");
  for (const auto& p : route_sets) {
    if (!std::filesystem::is_regular_file(p)) throw std::invalid_argument("route set not found: " + p.string());
  }
  if (weights_path && !std::filesystem::is_regular_file(*weights_path)) {
    throw std::invalid_argument("weight bundle not found: " + weights_path->string());
  }
  if (repeats < 0) throw std::invalid_argument("repeat count must be >= 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (out_dir.empty()) throw std::invalid_argument("an output directory is required");
  for (const auto& w : resolved_weathers()) weather_preset(w);
  ScenarioConfig s;
  s.kind = scenario;
  s.dt = dt;
  s.log_period = log_period;
  s.validate();
  if (!(max_time > 0.0)) throw std::invalid_argument("max episode time must be > 0");
}

std::uint64_t episode_seed(std::uint64_t run_seed, std::size_t route, std::size_t weather, int repeat) {
  return mix_seed(mix_seed(mix_seed(run_seed, route), weather), static_cast<std::uint64_t>(repeat));
}

RunReport run_scenario(const RunConfig& config) { return execute(config, Driver::kPolicy, false); }

RunReport generate_expert_logs(const RunConfig& config, bool with_predictions) {
  RunConfig c = config;
  c.write_logs = true;
  return execute(c, Driver::kExpert, with_predictions);
}

MetricReport score_logs(const DriveLog& prediction, const DriveLog& reference, const LossWeights& alpha) {
  if (prediction.frames.size() != reference.frames.size()) {
    throw std::invalid_argument("logs are misaligned: " + std::to_string(prediction.frames.size()) + " vs " +
                                std::to_string(reference.frames.size()) + " frames");
  }
  if (prediction.meta.map != reference.meta.map || prediction.meta.route != reference.meta.route) {
    throw std::invalid_argument("logs come from different maps or routes");
  }
  MetricAccumulator acc;
  for (std::size_t i = 0; i < reference.frames.size(); ++i) {
    const DriveLogFrame& p = prediction.frames[i];
    const DriveLogFrame& r = reference.frames[i];
    if (p.index != r.index || p.t != r.t) {
      throw std::invalid_argument("logs are misaligned at frame " + std::to_string(i));
    }
    acc.add_segmentation(p.semantic, r.semantic);
    acc.add_flags(p.tl, r.tl, p.ss, r.ss);
    acc.add_controls(p.controls, r.controls);
    const std::array<double, 6> pw{p.waypoints[0].x, p.waypoints[0].y, p.waypoints[1].x,
                                   p.waypoints[1].y, p.waypoints[2].x, p.waypoints[2].y};
    const std::array<double, 6> rw{r.waypoints[0].x, r.waypoints[0].y, r.waypoints[1].x,
                                   r.waypoints[1].y, r.waypoints[2].x, r.waypoints[2].y};
    acc.add_waypoints(pw, rw);
  }
  return acc.report(alpha.alpha);
}

std::vector<LocalPoint> frame_marker_points(const DriveLogFrame& frame) {
  std::vector<LocalPoint> points{LocalPoint{0.0, 0.0}};
  points.insert(points.end(), frame.waypoints.begin(), frame.waypoints.end());
  return points;
}

RgbImage render_frame(const DriveLogFrame& frame, const CameraIntrinsics& camera) {
  const int rows = frame.semantic.rows();
  const int cols = frame.semantic.cols();
  if (rows != kSdcSize || cols != kSdcSize || cols != camera.width || rows != camera.height) {
    throw std::invalid_argument("render expects 256x256 frames");
  }
  const DepthMap depth = decode_depth_map(frame.depth_rgb, rows, cols);
  const SdcTensor sdc = project_sdc(frame.semantic, depth, ProjectionTable::from_camera(camera));
  const auto points = frame_marker_points(frame);
  const RgbImage bev = rasterize_markers(sdc, frame.route_point, points);
  RgbImage out(rows, 3 * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::uint8_t g = depth_to_gray(depth(r, c));
      out(r, c) = {g, g, g};
      out(r, cols + c) = class_color(frame.semantic(r, c));
      out(r, 2 * cols + c) = bev(r, c);
    }
  }
  return out;
}

std::size_t render_episode(const DriveLog& log, const std::filesystem::path& out_dir, bool dump_sdc,
                           const CameraIntrinsics& camera) {
  std::filesystem::create_directories(out_dir);
  for (const DriveLogFrame& f : log.frames) {
    char stem[32];
    std::snprintf(stem, sizeof(stem), "frame_%06zu", f.index);
    write_ppm(out_dir / (std::string(stem) + ".ppm"), render_frame(f, camera));
    if (dump_sdc) {
      const DepthMap depth = decode_depth_map(f.depth_rgb, f.semantic.rows(), f.semantic.cols());
      const SdcTensor sdc = project_sdc(f.semantic, depth, ProjectionTable::from_camera(camera));
      write_tensor_file(out_dir / (std::string(stem) + "_sdc.sdct"), sdc.to_tensor());
    }
  }
  return log.frames.size();
}

std::string to_json(const RouteResult& r, const EpisodeKey& key, const EpisodeStats& stats) {
  json counts = json::object();
  json rates = json::object();
  const double driven = r.route_length * r.rc / 100.0;
  for (std::size_t i = 0; i < kNumInfractionTypes; ++i) {
    const auto type = static_cast<InfractionType>(i);
    counts[std::string(to_string(type))] = r.ledger.count(type);
    rates[std::string(to_string(type))] = per_km(r.ledger.count(type), driven);
  }
  json events = json::array();
  for (const auto& e : r.ledger.events) {
    events.push_back({{"type", std::string(to_string(e.type))}, {"t", e.t}, {"subject", e.subject}});
  }
  const json j = {{"episode", key.name()},
                  {"route", r.route},
                  {"weather", r.weather},
                  {"repeat", r.repeat},
                  {"seed", r.seed},
                  {"rc", r.rc},
                  {"ip", r.ip},
                  {"ds", r.ds},
                  {"termination", std::string(to_string(r.termination))},
                  {"route_length_m", r.route_length},
                  {"duration_s", r.duration},
                  {"offroad_m", r.ledger.offroad_m},
                  {"infractions", counts},
                  {"infractions_per_km", rates},
                  {"events", events},
                  {"stats",
                   {{"steps", stats.steps},
                    {"frames_sensed", stats.frames_sensed},
                    {"sdc_produced", stats.sdc_produced},
                    {"sdc_consumed", stats.sdc_consumed},
                    {"branch_counts", stats.branch_counts},
                    {"clamp_events", stats.clamp_events},
                    {"events_fired", stats.events_fired}}}};
  return j.dump();
}

std::string to_json(const MetricReport& m) { return metrics_json(m).dump(1); }

std::string summary_json(const RunConfig& config, const RunReport& report) {
  json groups = json::array();
  for (const auto& g : report.groups) {
    groups.push_back({{"weather", g.weather}, {"repeat", g.repeat}, {"ds", g.score.ds}, {"rc", g.score.rc}, {"ip", g.score.ip}});
  }
  const auto sp = [](const Spread& s) { return json{{"mean", s.mean}, {"std", s.std}}; };
  json j = {{"schema", "sdcdrive.summary/1"},
            {"scenario", std::string(to_string(config.scenario))},
            {"variant", std::string(to_string(config.variant))},
            {"waypoints", std::string(to_string(config.waypoints))},
            {"mlp", std::string(to_string(config.mlp))},
            {"features", std::string(to_string(config.features))},
            {"seed", config.seed},
            {"repeats", config.resolved_repeats()},
            {"weathers", config.resolved_weathers()},
            {"episodes", report.results.size()},
            {"groups", groups},
            {"ds", sp(report.ds)},
            {"rc", sp(report.rc)},
            {"ip", sp(report.ip)}};
  if (report.metrics) j["metrics"] = metrics_json(*report.metrics);
  return j.dump(1);
}

}  // namespace sdcdrive
