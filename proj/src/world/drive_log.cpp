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

#include "sdcdrive/world/drive_log.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "sdcdrive/common/tensor_io.hpp"
#include "sdcdrive/sensor/depth_codec.hpp"
#include "sdcdrive/world/map_io.hpp"

namespace sdcdrive {
namespace {

using nlohmann::json;

std::string frame_stem(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06zu", index);
  return buf;
}

}  // namespace

DriveLogFrame record_log(const WorldState& state, const PipelineOutputs& outputs, std::size_t index) {
  DriveLogFrame f;
  f.index = index;
  f.t = state.time;
  f.depth_rgb = encode_depth_map(outputs.depth);
  f.semantic = outputs.semantic;
  f.speed = state.ego.speed;
  f.route_point = outputs.route_point;
  f.controls = outputs.controls.clamped();
  f.waypoints = outputs.waypoints;
  f.tl = outputs.tl ? 1 : 0;
  f.ss = outputs.ss ? 1 : 0;
  return f;
}

void write_drive_log(const std::filesystem::path& dir, const DriveLog& log) {
  std::filesystem::create_directories(dir / "frames");
  json frames = json::array();
  for (const DriveLogFrame& f : log.frames) {
    const auto rows = static_cast<std::uint32_t>(f.semantic.rows());
    const auto cols = static_cast<std::uint32_t>(f.semantic.cols());
    const std::string stem = frame_stem(f.index);
    const std::string depth_name = "frames/" + stem + "_depth.sdct";
    const std::string sem_name = "frames/" + stem + "_semantic.sdct";
    write_tensor_file(dir / depth_name, Tensor::from_u8({3, rows, cols}, f.depth_rgb));
    write_tensor_file(dir / sem_name, Tensor::from_u8({rows, cols}, f.semantic.data()));
    json wps = json::array();
    for (const LocalPoint& p : f.waypoints) wps.push_back({p.x, p.y});
    frames.push_back({{"index", f.index},
                      {"t", f.t},
                      {"speed", f.speed},
                      {"route", {f.route_point.x, f.route_point.y}},
                      {"steering", f.controls.steering},
                      {"throttle", f.controls.throttle},
                      {"brake", f.controls.brake},
                      {"waypoints", wps},
                      {"tl", f.tl},
                      {"ss", f.ss},
                      {"depth", depth_name},
                      {"semantic", sem_name}});
  }
  const DriveLogMeta& m = log.meta;
  const json index = {{"schema", "sdcdrive.log/1"},
                      {"role", m.role},
                      {"map", m.map},
                      {"route", m.route},
                      {"scenario", m.scenario},
                      {"weather", m.weather},
                      {"variant", m.variant},
                      {"seed", m.seed},
                      {"dt", m.dt},
                      {"log_period", m.log_period},
                      {"frames", frames}};
  std::ofstream out(dir / "index.json", std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir / "index.json").string());
  out << index.dump(1) << '\n';
}

DriveLog read_drive_log(const std::filesystem::path& dir) {
  const json j = json::parse(read_text_file(dir / "index.json"));
  if (j.value("schema", "") != "sdcdrive.log/1") throw std::runtime_error("not a drive log: " + dir.string());
  DriveLog log;
  log.meta.role = j.at("role").get<std::string>();
  log.meta.map = j.at("map").get<std::string>();
  log.meta.route = j.at("route").get<std::string>();
  log.meta.scenario = j.at("scenario").get<std::string>();
  log.meta.weather = j.at("weather").get<std::string>();
  log.meta.variant = j.at("variant").get<std::string>();
  log.meta.seed = j.at("seed").get<std::uint64_t>();
  log.meta.dt = j.at("dt").get<double>();
  log.meta.log_period = j.at("log_period").get<double>();
  for (const auto& jf : j.at("frames")) {
    DriveLogFrame f;
    f.index = jf.at("index").get<std::size_t>();
    f.t = jf.at("t").get<double>();
    f.speed = jf.at("speed").get<double>();
    f.route_point = {jf.at("route").at(0).get<double>(), jf.at("route").at(1).get<double>()};
    f.controls = {jf.at("steering").get<double>(), jf.at("throttle").get<double>(), jf.at("brake").get<double>()};
    const auto& wps = jf.at("waypoints");
    if (wps.size() != kNumWaypoints) throw std::runtime_error("frame needs exactly 3 waypoints");
    for (std::size_t i = 0; i < kNumWaypoints; ++i) f.waypoints[i] = {wps[i].at(0).get<double>(), wps[i].at(1).get<double>()};
    f.tl = jf.at("tl").get<int>();
    f.ss = jf.at("ss").get<int>();
    const Tensor sem = read_tensor_file(dir / jf.at("semantic").get<std::string>());
    if (sem.dtype != DType::kU8 || sem.shape.size() != 2) throw std::runtime_error("bad semantic tensor");
    f.semantic = SemanticImage(static_cast<int>(sem.shape[0]), static_cast<int>(sem.shape[1]));
    const auto labels = sem.to_u8();
    std::copy(labels.begin(), labels.end(), f.semantic.data().begin());
    const Tensor depth = read_tensor_file(dir / jf.at("depth").get<std::string>());
    if (depth.dtype != DType::kU8 || depth.shape != std::vector<std::uint32_t>{3, sem.shape[0], sem.shape[1]}) {
      throw std::runtime_error("bad depth tensor");
    }
    f.depth_rgb = depth.to_u8();
    log.frames.push_back(std::move(f));
  }
  return log;
}

}  // namespace sdcdrive
