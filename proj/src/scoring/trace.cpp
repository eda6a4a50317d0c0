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

#include "sdcdrive/scoring/trace.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sdcdrive {
namespace {

using nlohmann::json;

json to_json(Vec2 p) { return json::array({p.x, p.y}); }

Vec2 vec_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json to_json(const Polygon& poly) {
  json out = json::array();
  for (const Vec2& p : poly) out.push_back(to_json(p));
  return out;
}

Polygon polygon_from(const json& j) {
  Polygon out;
  for (const auto& p : j) out.push_back(vec_from(p));
  return out;
}

LightColor parse_light_color(const std::string& s) {
  if (s == "green") return LightColor::kGreen;
  if (s == "yellow") return LightColor::kYellow;
  if (s == "red") return LightColor::kRed;
  throw std::invalid_argument("unknown light color: " + s);
}

}  // namespace

TraceSample trace_sample(const WorldState& state) {
  TraceSample s;
  s.t = state.time;
  s.pose = state.ego.pose;
  s.speed = state.ego.speed;
  s.footprint = state.ego.footprint();
  s.front = state.ego.front();
  s.center = state.ego.center();
  for (std::size_t i = 0; i < state.actors.size(); ++i) {
    s.actors.push_back({i, state.actors[i].kind, state.actors[i].footprint()});
  }
  for (std::size_t i = 0; i < state.map->lights.size(); ++i) s.lights.push_back(light_color(state, i));
  return s;
}

std::string trace_to_json(const Trace& trace) {
  json samples = json::array();
  for (const TraceSample& s : trace.samples) {
    json actors = json::array();
    for (const ActorSnapshot& a : s.actors) {
      actors.push_back({{"id", a.id}, {"kind", std::string(to_string(a.kind))}, {"footprint", to_json(a.footprint)}});
    }
    json lights = json::array();
    for (LightColor c : s.lights) lights.push_back(std::string(to_string(c)));
    samples.push_back({{"t", s.t},
                       {"pose", {s.pose.x_g, s.pose.y_g, s.pose.heading_deg}},
                       {"speed", s.speed},
                       {"footprint", to_json(s.footprint)},
                       {"front", to_json(s.front)},
                       {"center", to_json(s.center)},
                       {"actors", actors},
                       {"lights", lights}});
  }
  json out = {{"schema", "sdcdrive.trace/1"}, {"map", trace.map}, {"route", trace.route}, {"samples", samples}};
  return out.dump();
}

Trace trace_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("schema", "") != "sdcdrive.trace/1") throw std::runtime_error("not a trace file");
  Trace trace;
  trace.map = j.value("map", "");
  trace.route = j.value("route", "");
  for (const auto& js : j.at("samples")) {
    TraceSample s;
    s.t = js.at("t").get<double>();
    const auto& pose = js.at("pose");
    s.pose = {pose.at(0).get<double>(), pose.at(1).get<double>(), pose.at(2).get<double>()};
    s.speed = js.at("speed").get<double>();
    s.footprint = polygon_from(js.at("footprint"));
    s.front = vec_from(js.at("front"));
    s.center = vec_from(js.at("center"));
    for (const auto& ja : js.at("actors")) {
      s.actors.push_back({ja.at("id").get<std::size_t>(), parse_actor_kind(ja.at("kind").get<std::string>()),
                          polygon_from(ja.at("footprint"))});
    }
    for (const auto& jl : js.at("lights")) s.lights.push_back(parse_light_color(jl.get<std::string>()));
    trace.samples.push_back(std::move(s));
  }
  return trace;
}

void write_trace(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << trace_to_json(trace) << '\n';
}

Trace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return trace_from_json(buf.str());
}

}  // namespace sdcdrive
