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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sdcdrive/common/classes.hpp"
#include "sdcdrive/control/agents.hpp"
#include "sdcdrive/control/nn.hpp"
#include "sdcdrive/control/policy.hpp"
#include "sdcdrive/control/transform.hpp"
#include "sdcdrive/harness/episode.hpp"
#include "sdcdrive/harness/run.hpp"
#include "sdcdrive/scoring/metrics.hpp"
#include "sdcdrive/scoring/scoring.hpp"
#include "sdcdrive/sdc/sdc.hpp"
#include "sdcdrive/sensor/camera.hpp"
#include "sdcdrive/sensor/depth_codec.hpp"
#include "sdcdrive/world/map_io.hpp"
#include "worlds.hpp"

namespace sdcdrive {
namespace {

const std::string kData = SDCDRIVE_DATA_DIR;

// Collects failure reasons for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  bool ok() const { return count_ == 0; }
  std::string detail() const {
    if (ok()) return notes_;
    std::string s = std::to_string(count_) + " failure(s): ";
    for (std::size_t i = 0; i < failures_.size(); ++i) s += (i ? "; " : "") + failures_[i];
    return s;
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
  std::string notes_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "sdcdrive_acceptance" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void sdc_oracle(Check& c) {
  const CameraIntrinsics cam;
  const ProjectionTable table = ProjectionTable::from_camera(cam);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> cls(0, kNumClasses - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double fast_seconds = 0.0;
  int mismatches = 0;
  for (int n = 0; n < 100; ++n) {
    SemanticImage sem(256, 256, 0);
    DepthMap depth(256, 256, 0.0);
    for (int r = 0; r < 256; ++r) {
      for (int col = 0; col < 256; ++col) {
        sem(r, col) = static_cast<std::uint8_t>(cls(rng));
        const double p = unit(rng);
        depth(r, col) = p < 0.6 ? 70.0 * unit(rng) : p < 0.8 ? 1000.0 * unit(rng) : 0.25 * std::floor(280.0 * unit(rng));
      }
    }
    const auto t0 = std::chrono::steady_clock::now();
    const SdcTensor fast = project_sdc(sem, depth, table);
    fast_seconds += seconds_since(t0);
    const SdcTensor oracle = testing::labels_to_sdc(testing::brute_force_sdc(sem, depth, cam.fx, cam.cx));
    if (!(fast == oracle)) ++mismatches;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " of 100 frames differ");
  c.expect(fast_seconds < 10.0, "projection took " + fmt(fast_seconds) + " s");
  c.note("100/100 bit-exact, " + fmt(fast_seconds) + " s");
}

void depth_round_trip(Check& c) {
  const double bound = 1000.0 / 16777215.0;
  double worst = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double d = 1000.0 * static_cast<double>(i) / (n - 1);
    worst = std::max(worst, std::fabs(decode_depth(encode_depth(d)) - d));
  }
  c.expect(worst <= bound, "max error " + fmt(worst));
  c.note("max error " + fmt(worst) + " <= " + fmt(bound));
}

void transform_isometry(Check& c) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-1000.0, 1000.0);
  std::uniform_real_distribution<double> hd(-180.0, 180.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Pose ego{pos(rng), pos(rng), hd(rng)};
    const LocalPoint self = global_to_local(ego.position(), ego);
    c.expect(self.x == 0.0 && self.y == 0.0, "ego does not map to the origin");
    const Vec2 a{pos(rng), pos(rng)}, b{pos(rng), pos(rng)};
    const LocalPoint la = global_to_local(a, ego), lb = global_to_local(b, ego);
    worst = std::max(worst, std::fabs(std::hypot(la.x - lb.x, la.y - lb.y) - distance(a, b)));
  }
  c.expect(worst <= 1e-9, "distance drift " + fmt(worst));
  c.note("10^4 poses, distance drift " + fmt(worst));
}

void pid_targets_arithmetic(Check& c) {
  const PidTargets t = pid_targets({LocalPoint{0, 1}, LocalPoint{0, 3}, LocalPoint{0, 5}});
  c.expect(t.desired_speed == 4.0, "speed " + fmt(t.desired_speed));
  c.expect(t.heading == 0.0, "heading " + fmt(t.heading));
  c.note("speed 4, heading 0");
}

void fusion_truth_table(Check& c) {
  std::array<int, 5> seen{};
  for (double tm = 0.0; tm <= 0.6001; tm += 0.025) {
    for (double tp = 0.0; tp <= 0.6001; tp += 0.025) {
      const FusionResult r = fuse_controls_detailed({0.3, tm, 0.7}, {-0.2, tp, 0.0}, ControlWeights{});
      ++seen[static_cast<int>(r.branch)];
      const bool mlp_ok = tm >= kThrottleThreshold, pid_ok = tp >= kThrottleThreshold;
      const FusionBranch expected = mlp_ok && pid_ok ? FusionBranch::kBlend
                                    : mlp_ok         ? FusionBranch::kMlpOnly
                                    : pid_ok         ? FusionBranch::kPidOnly
                                                     : FusionBranch::kStop;
      c.expect(r.branch == expected, "wrong branch at " + fmt(tm) + "," + fmt(tp));
      c.expect((r.controls.brake != 0.0) == (r.branch == FusionBranch::kStop), "brake outside stop branch");
    }
  }
  for (int b = 1; b <= 4; ++b) c.expect(seen[b] > 0, "branch " + std::to_string(b) + " never taken");

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  double worst_sum = 0.0, worst_scale = 0.0;
  for (int i = 0; i < 1000; ++i) {
    LossWeights a;
    for (double& v : a.alpha) v = u(rng);
    const ControlWeights b = compute_beta(a);
    for (int k = 0; k < 3; ++k) worst_sum = std::max(worst_sum, std::fabs(b.beta[0][k] + b.beta[1][k] - 1.0));
    for (double scale : {0.5, 2.0, 10.0}) {
      LossWeights s = a;
      for (double& v : s.alpha) v *= scale;
      const ControlWeights bs = compute_beta(s);
      for (int r = 0; r < 2; ++r) {
        for (int k = 0; k < 3; ++k) worst_scale = std::max(worst_scale, std::fabs(bs.beta[r][k] - b.beta[r][k]));
      }
    }
  }
  c.expect(worst_sum <= 1e-12, "beta sum drift " + fmt(worst_sum));
  c.expect(worst_scale <= 1e-12, "scale drift " + fmt(worst_scale));
  c.note("branch counts " + std::to_string(seen[1]) + "/" + std::to_string(seen[2]) + "/" +
         std::to_string(seen[3]) + "/" + std::to_string(seen[4]) + ", beta drift " + fmt(std::max(worst_sum, worst_scale)));
}

void gru_oracle(Check& c) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (std::size_t hidden : {std::size_t{4}, std::size_t{232}}) {
    // Weights are reused in batches of 50; inputs and state are fresh per instance.
    std::optional<WeightBundle> w;
    for (int n = 0; n < 1000; ++n) {
      if (n % 50 == 0) w = WeightBundle::random(rng(), 16, hidden, 8);
      std::vector<double> x(5), h(hidden);
      for (double& v : x) v = 3.0 * u(rng);
      for (double& v : h) v = u(rng);
      const auto fast = gru_cell(*w, x, h);
      const auto ref = testing::scalar_gru_step(*w, x, h);
      for (std::size_t i = 0; i < hidden; ++i) {
        const double rel = std::fabs(fast[i] - ref[i]) / std::max(std::fabs(ref[i]), 1e-300);
        if (ref[i] != 0.0) worst = std::max(worst, rel);
        else c.expect(fast[i] == 0.0, "nonzero where oracle is zero");
      }
    }
  }
  c.expect(worst <= 1e-6, "relative error " + fmt(worst));
  c.note("2000 instances, max relative error " + fmt(worst));
}

TraceSample ego_sample(double t, double y, double speed, std::size_t lights, LightColor color) {
  EgoState e;
  e.pose = {0.0, y, -90.0};
  e.speed = speed;
  TraceSample s;
  s.t = t;
  s.pose = e.pose;
  s.speed = speed;
  s.footprint = e.footprint();
  s.front = e.front();
  s.center = e.center();
  s.lights.assign(lights, color);
  return s;
}

Trace drive(double y0, double y1, std::size_t lights = 0, LightColor color = LightColor::kGreen) {
  Trace tr;
  tr.map = "straight";
  tr.route = "straight";
  double t = 0.0;
  for (double y = y0; y <= y1 + 1e-9; y += 0.5, t += 0.1) tr.samples.push_back(ego_sample(t, y, 5.0, lights, color));
  return tr;
}

void scoring_protocol(Check& c) {
  const auto route = testing::straight_route(100.0);
  const auto map = testing::freeze(testing::straight_map(100.0));

  Trace ped = drive(0.0, 100.0);
  ActorSnapshot a;
  a.kind = ActorKind::kPedestrian;
  a.footprint = oriented_box({0.0, 50.0}, {1, 0}, 0.6, 0.6);
  for (auto& s : ped.samples) s.actors.push_back(a);
  const RouteResult r1 = score_route(ped, *route, *map);
  c.expect(r1.ip == 0.5, "pedestrian IP " + fmt(r1.ip));
  c.expect(std::fabs(r1.ds - r1.rc * r1.ip) <= 1e-9, "DS != RC*IP");

  auto raw = testing::signal_map(100.0, 30.0);
  TrafficLight second = raw->lights[0];
  second.id = "light2";
  second.stop_line = {{-5.0, 60.0}, {5.0, 60.0}};
  raw->lights.push_back(second);
  raw->stop_signs.push_back({"stop", {5.5, 80.0}, {{-5, 78}, {5, 78}, {5, 84}, {-5, 84}}});
  const auto signal = testing::freeze(raw);
  const RouteResult r2 = score_route(drive(0.0, 100.0, 2, LightColor::kRed), *route, *signal);
  c.expect(std::fabs(r2.ip - 0.392) <= 1e-9, "red/stop IP " + fmt(r2.ip));
  c.expect(std::fabs(r2.ds - r2.rc * r2.ip) <= 1e-9, "DS != RC*IP");

  const RouteResult r3 = score_route(drive(0.0, 40.0), *route, *map);
  c.expect(std::fabs(r3.ds - r3.rc * r3.ip) <= 1e-9, "DS != RC*IP on partial route");

  Trace dev;
  dev.samples.push_back(ego_sample(0.0, 0.0, 5.0, 0, LightColor::kGreen));
  TraceSample far = ego_sample(0.1, 10.0, 5.0, 0, LightColor::kGreen);
  far.pose.x_g = 29.9;
  far.center.x = 29.9;
  dev.samples.push_back(far);
  c.expect(check_termination(dev, *route) == TerminationReason::kRunning, "deviation fired at 29.9 m");
  far.pose.x_g = 30.1;
  far.center.x = 30.1;
  far.t = 0.2;
  dev.samples.push_back(far);
  c.expect(check_termination(dev, *route) == TerminationReason::kDeviation, "deviation not fired at 30.1 m");

  Trace idle;
  for (int i = 0; i <= 1799; ++i) idle.samples.push_back(ego_sample(0.1 * i, 10.0, 0.0, 0, LightColor::kGreen));
  c.expect(check_termination(idle, *route) == TerminationReason::kRunning, "timeout before 180 s");
  for (int i = 1800; i <= 1801; ++i) idle.samples.push_back(ego_sample(0.1 * i, 10.0, 0.0, 0, LightColor::kGreen));
  c.expect(check_termination(idle, *route) == TerminationReason::kTimeout, "no timeout after 180 s");
  c.note("IP " + fmt(r1.ip) + " and " + fmt(r2.ip) + ", deviation and inaction fire");
}

void metric_oracles(Check& c) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution bit(0.4);
  std::normal_distribution<double> gauss(0.0, 2.0);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const std::size_t len = 64 + n * 7;
    std::vector<int> pi(len), gi(len);
    std::vector<std::uint8_t> pu(len), gu(len);
    std::vector<double> ps(len), gs(len), pg(len), gg(len);
    for (std::size_t k = 0; k < len; ++k) {
      pi[k] = bit(rng);
      gi[k] = bit(rng);
      pu[k] = static_cast<std::uint8_t>(pi[k]);
      gu[k] = static_cast<std::uint8_t>(gi[k]);
      ps[k] = u(rng);
      gs[k] = bit(rng);
      pg[k] = gauss(rng);
      gg[k] = gauss(rng);
    }
    if (n % 10 == 0) ps[0] = 0.0;
    worst = std::max(worst, std::fabs(iou(pu, gu) - testing::naive_iou(pi, gi)));
    worst = std::max(worst, std::fabs(accuracy(ps, gs) - testing::naive_accuracy(ps, gs)));
    worst = std::max(worst, std::fabs(seg_loss(ps, gs) - testing::naive_seg_loss(ps, gs)));
    worst = std::max(worst, std::fabs(mae(pg, gg) - testing::naive_mae(pg, gg)));
  }
  c.expect(worst <= 1e-9, "oracle drift " + fmt(worst));
  std::vector<double> half(1000, 0.5), gt(1000, 0.0);
  std::fill(gt.begin(), gt.begin() + 500, 1.0);
  const double loss = seg_loss(half, gt);
  c.expect(std::fabs(loss - 1.1931) <= 1e-4, "worked example " + fmt(loss));
  c.note("400 instances, drift " + fmt(worst) + ", worked example " + fmt(loss));
}

RunConfig demo_run(const std::string& map, const std::string& out) {
  RunConfig c;
  c.map_path = kData + "/maps/" + map + ".json";
  c.route_sets = {kData + "/routes/" + map + ".json"};
  c.out_dir = scratch(out);
  c.write_traces = false;
  return c;
}

void closed_loop_smoke(Check& c) {
  RunConfig cfg = demo_run("straight_two_turn", "smoke");
  cfg.variant = PolicyVariant::kPid;
  cfg.repeats = 3;
  const auto t0 = std::chrono::steady_clock::now();
  const RunReport report = run_scenario(cfg);
  const double elapsed = seconds_since(t0);
  c.expect(report.results.size() == 3, "expected 3 episodes");
  for (const RouteResult& r : report.results) {
    c.expect(r.rc == 100.0, "RC " + fmt(r.rc));
    c.expect(r.ledger.empty(), "non-empty ledger");
    c.expect(r.ds == 100.0, "DS " + fmt(r.ds));
    c.expect(r.ds == report.results[0].ds && r.rc == report.results[0].rc, "repeats disagree");
  }
  c.expect(elapsed < 60.0, "took " + fmt(elapsed) + " s");
  c.note("3 repeats DS 100, " + fmt(elapsed) + " s");
}

void adversarial_smoke(Check& c) {
  EpisodeConfig cfg;
  cfg.map = load_map(kData + "/maps/adversarial_crossing.json");
  cfg.route = load_route_set(kData + "/routes/adversarial_crossing.json").routes.at(0);
  cfg.scenario.kind = ScenarioKind::k1WA;
  cfg.variant = PolicyVariant::kProposed;
  cfg.max_time = 40.0;
  const EpisodeResult r = run_episode(cfg);
  c.expect(r.stats.events_fired >= 1, "crossing never triggered");
  c.expect(r.result.ledger.count(InfractionType::kPedestrian) == 0, "pedestrian collision");
  // The ego must come to rest while the crossing pedestrian is still ahead of it.
  bool stopped = false;
  for (const TraceSample& s : r.trace.samples) {
    if (s.speed >= 0.1 || s.t < 1.0) continue;
    for (const ActorSnapshot& a : s.actors) {
      if (a.kind != ActorKind::kPedestrian) continue;
      Vec2 p{0.0, 0.0};
      for (const Vec2& v : a.footprint) p = p + v * (1.0 / static_cast<double>(a.footprint.size()));
      if (p.y > s.front.y && std::fabs(p.x) < 6.0) stopped = true;
    }
  }
  c.expect(stopped, "ego never stopped short of the pedestrian");
  c.note("stopped before crossing, 0 pedestrian collisions, RC " + fmt(r.result.rc));
}

void determinism(Check& c) {
  RunConfig a = demo_run("adversarial_crossing", "det_a");
  a.scenario = ScenarioKind::k1WA;
  a.repeats = 1;
  a.max_time = 20.0;
  a.write_logs = true;
  RunConfig b = a;
  b.out_dir = scratch("det_b");
  run_scenario(a);
  run_scenario(b);
  std::size_t files = 0, bytes = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(a.out_dir / "logs")) {
    if (!e.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(e.path(), a.out_dir);
    const std::string x = slurp(e.path());
    c.expect(x == slurp(b.out_dir / rel), "differs: " + rel.string());
    ++files;
    bytes += x.size();
  }
  c.expect(files > 0, "no log files written");
  c.note(std::to_string(files) + " log files, " + std::to_string(bytes) + " bytes identical");
}

struct Criterion {
  const char* name;
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace sdcdrive

int main() {
  using namespace sdcdrive;
  const std::vector<Criterion> criteria = {
      {"sdc_oracle_equivalence", sdc_oracle},
      {"depth_codec_round_trip", depth_round_trip},
      {"transform_isometry_and_anchor", transform_isometry},
      {"pid_target_arithmetic", pid_targets_arithmetic},
      {"fusion_truth_table_and_beta", fusion_truth_table},
      {"gru_scalar_oracle", gru_oracle},
      {"scoring_protocol", scoring_protocol},
      {"metric_oracles", metric_oracles},
      {"closed_loop_smoke", closed_loop_smoke},
      {"adversarial_smoke", adversarial_smoke},
      {"end_to_end_determinism", determinism},
  };
  int failed = 0;
  for (const Criterion& k : criteria) {
    Check c;
    try {
      k.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s: %s\n", c.ok() ? "PASS" : "FAIL", k.name, c.detail().c_str());
    std::fflush(stdout);
    failed += c.ok() ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
