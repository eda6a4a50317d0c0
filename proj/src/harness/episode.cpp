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

#include "sdcdrive/harness/episode.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sdcdrive/control/transform.hpp"
#include "sdcdrive/control/waypoints.hpp"
#include "sdcdrive/harness/features.hpp"
#include "sdcdrive/sdc/sdc.hpp"
#include "sdcdrive/sensor/depth_codec.hpp"
#include "sdcdrive/sensor/render.hpp"
#include "sdcdrive/sensor/weather.hpp"

namespace sdcdrive {

std::string_view to_string(WaypointSource s) { return s == WaypointSource::kOracle ? "oracle" : "network"; }
std::string_view to_string(MlpSource s) { return s == MlpSource::kOracle ? "oracle" : "network"; }
std::string_view to_string(FeatureSource s) { return s == FeatureSource::kOracle ? "oracle" : "random"; }

WaypointSource parse_waypoint_source(std::string_view s) {
  if (s == "oracle") return WaypointSource::kOracle;
  if (s == "network") return WaypointSource::kNetwork;
  throw std::invalid_argument("unknown waypoint source: " + std::string(s));
}

MlpSource parse_mlp_source(std::string_view s) {
  if (s == "oracle") return MlpSource::kOracle;
  if (s == "network") return MlpSource::kNetwork;
  throw std::invalid_argument("unknown MLP source: " + std::string(s));
}

FeatureSource parse_feature_source(std::string_view s) {
  if (s == "oracle") return FeatureSource::kOracle;
  if (s == "random") return FeatureSource::kRandom;
  throw std::invalid_argument("unknown feature source: " + std::string(s));
}

bool EpisodeConfig::needs_network() const {
  return (waypoints == WaypointSource::kNetwork && needs_pid(variant)) ||
         (mlp == MlpSource::kNetwork && needs_mlp(variant));
}

void EpisodeConfig::validate() const {
  if (!map) throw std::invalid_argument("episode needs a map");
  if (!route) throw std::invalid_argument("episode needs a route");
  scenario.validate();
  camera.validate();
  gains.validate();
  penalties.validate();
  if (!(max_time > 0.0)) throw std::invalid_argument("episode time budget must be > 0");
  weather_preset(scenario.weather);
  const bool network = needs_network() || (driver == Driver::kExpert && record_prediction &&
                                           (waypoints == WaypointSource::kNetwork || mlp == MlpSource::kNetwork));
  if (network && !weights) {
    throw std::invalid_argument("variant " + std::string(to_string(variant)) +
                                " with network sources needs a weight bundle");
  }
  if (weights && weights->feature_size() != kFeatureSize) {
    throw std::invalid_argument("weight bundle feature size must be " + std::to_string(kFeatureSize));
  }
}

namespace {

struct Sensed {
  RenderOutput clean;
  RenderOutput noisy;  // after weather and the depth codec
};

struct Decision {
  VehicularControls controls;
  FusionBranch branch = FusionBranch::kStop;
  Waypoints waypoints{};
};

std::array<double, 6> flatten(const Waypoints& wp) {
  return {wp[0].x, wp[0].y, wp[1].x, wp[1].y, wp[2].x, wp[2].y};
}

DriveLogMeta make_meta(const EpisodeConfig& cfg, std::string role) {
  DriveLogMeta m;
  m.role = std::move(role);
  m.map = cfg.map->name;
  m.route = cfg.route->name();
  m.scenario = std::string(to_string(cfg.scenario.kind));
  m.weather = cfg.scenario.weather;
  m.variant = cfg.driver == Driver::kExpert && m.role == "reference" ? "expert" : std::string(to_string(cfg.variant));
  m.seed = cfg.scenario.seed;
  m.dt = cfg.scenario.dt;
  m.log_period = cfg.scenario.log_period;
  return m;
}

}  // namespace

EpisodeResult run_episode(const EpisodeConfig& cfg) {
  cfg.validate();
  const RouteSpec& route = *cfg.route;
  const double dt = cfg.scenario.dt;
  const WeatherPreset& weather = weather_preset(cfg.scenario.weather);
  const ProjectionTable table = ProjectionTable::from_camera(cfg.camera);
  const ControlWeights beta = compute_beta(cfg.alpha);

  PidGains step_gains = cfg.gains;
  step_gains.dt = dt;
  PidGains frame_gains = cfg.gains;
  frame_gains.dt = cfg.scenario.log_period;
  PidAgent driving_pid(step_gains);
  PidAgent frame_pid(frame_gains);  // policy replayed at log rate on expert frames

  WorldState state = make_world(cfg.map, cfg.scenario, cfg.route);
  TerminationMonitor monitor(route, cfg.termination);
  const int per_log = cfg.scenario.steps_per_log();
  const auto max_steps = static_cast<std::int64_t>(std::llround(cfg.max_time / dt));
  const bool policy_drives = cfg.driver == Driver::kPolicy;

  EpisodeResult out;
  out.trace.map = cfg.map->name;
  out.trace.route = route.name();
  if (cfg.record_log) out.log = DriveLog{make_meta(cfg, policy_drives ? "policy" : "reference"), {}};
  if (!policy_drives && cfg.record_prediction) out.prediction_log = DriveLog{make_meta(cfg, "prediction"), {}};
  MetricAccumulator& metrics = out.metric_frames;
  EpisodeStats& stats = out.stats;
  TerminationReason reason = TerminationReason::kRunning;
  std::size_t frame_index = 0;

  for (;;) {
    const TraceSample sample = trace_sample(state);
    reason = monitor.update(sample);
    if (reason == TerminationReason::kRunning && state.step >= max_steps) reason = TerminationReason::kBlocked;
    out.trace.samples.push_back(sample);
    const bool running = reason == TerminationReason::kRunning;
    const bool log_step = state.step % per_log == 0;
    const bool predict_frame = !policy_drives && cfg.record_prediction && log_step;
    const bool need_decision = policy_drives ? (running || log_step) : predict_frame;

    const ExpertDecision expert = expert_decide(state, route, cfg.expert);
    const bool tl = traffic_light_bit(state, route, cfg.expert.sensing_range);
    const bool ss = stop_sign_bit(state, route, cfg.expert.sensing_range);
    const double speed = state.ego.speed;
    const LocalPoint route_point = global_to_local(route.target_after(state.route_progress), state.ego.pose);
    Waypoints oracle_wp{};
    if (!expert.stopping()) oracle_wp = oracle_waypoints(state, route);

    std::optional<Sensed> sensed;
    const bool network_now = need_decision && cfg.needs_network();
    if (log_step || network_now) {
      Sensed s;
      s.clean = render_depth_semantic(state, cfg.camera);
      s.noisy = s.clean;
      if (cfg.weather_noise) {
        apply_weather(s.noisy.depth, s.noisy.semantic, weather, mix_seed(cfg.scenario.seed, state.step));
      }
      s.noisy.depth = decode_depth_map(encode_depth_map(s.noisy.depth), s.noisy.depth.rows(), s.noisy.depth.cols());
      sensed = std::move(s);
      ++stats.frames_sensed;
    }

    std::optional<Decision> decision;
    if (need_decision) {
      PidAgent& pid = policy_drives ? driving_pid : frame_pid;
      Decision d;
      d.waypoints = oracle_wp;
      VehicularControls mlp = expert.controls;
      if (network_now) {
        std::vector<double> features;
        if (cfg.features == FeatureSource::kRandom) {
          features = random_features(cfg.scenario.seed, state.step);
        } else {
          const SdcTensor sdc = project_sdc(sensed->noisy.semantic, sensed->noisy.depth, table);
          ++stats.sdc_produced;
          const bool consume = uses_sdc(cfg.variant);
          if (consume) ++stats.sdc_consumed;
          features = oracle_features(consume ? &sdc : nullptr, tl, ss, speed);
        }
        const WaypointPrediction pred =
            predict_waypoints(features, route_point, speed, tl ? 1.0 : 0.0, ss ? 1.0 : 0.0, *cfg.weights);
        if (cfg.waypoints == WaypointSource::kNetwork) d.waypoints = pred.waypoints;
        if (cfg.mlp == MlpSource::kNetwork) mlp = mlp_agent(pred.latent, *cfg.weights);
      }
      const VehicularControls pid_controls = needs_pid(cfg.variant) ? pid.step(d.waypoints, speed) : VehicularControls{};
      if (!needs_mlp(cfg.variant)) mlp = {};
      const FusionResult fused = apply_policy(cfg.variant, mlp, pid_controls, beta);
      d.controls = fused.controls;
      d.branch = fused.branch;
      decision = d;
    }

    if (log_step) {
      if (decision) {
        metrics.add_segmentation(sensed->noisy.semantic, sensed->clean.semantic);
        metrics.add_flags(tl, tl, ss, ss);
        metrics.add_controls(decision->controls, expert.controls);
        const auto pred_wp = flatten(decision->waypoints);
        const auto gt_wp = flatten(oracle_wp);
        metrics.add_waypoints(pred_wp, gt_wp);
      }
      if (out.log) {
        PipelineOutputs o;
        o.depth = sensed->noisy.depth;
        o.semantic = policy_drives ? sensed->noisy.semantic : sensed->clean.semantic;
        o.route_point = route_point;
        o.controls = policy_drives ? decision->controls : expert.controls;
        o.waypoints = policy_drives ? decision->waypoints : oracle_wp;
        o.tl = tl;
        o.ss = ss;
        out.log->frames.push_back(record_log(state, o, frame_index));
      }
      if (out.prediction_log) {
        PipelineOutputs o;
        o.depth = sensed->noisy.depth;
        o.semantic = sensed->noisy.semantic;
        o.route_point = route_point;
        o.controls = decision->controls;
        o.waypoints = decision->waypoints;
        o.tl = tl;
        o.ss = ss;
        out.prediction_log->frames.push_back(record_log(state, o, frame_index));
      }
      ++frame_index;
    }

    if (!running) break;
    VehicularControls controls = expert.controls;
    if (policy_drives) {
      controls = decision->controls;
      ++stats.branch_counts[static_cast<std::size_t>(decision->branch) - 1];
    }
    state = step_world(state, controls, dt);
    ++stats.steps;
  }

  out.result = score_route(out.trace, route, *cfg.map, reason, cfg.penalties, cfg.termination);
  out.result.weather = cfg.scenario.weather;
  out.result.seed = cfg.scenario.seed;
  if (metrics.frames() > 0) out.metrics = metrics.report(cfg.alpha.alpha);
  stats.clamp_events = state.ego.clamp_events;
  stats.events_fired = state.events_fired;
  return out;
}

}  // namespace sdcdrive
