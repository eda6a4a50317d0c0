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

#include "sdcdrive/world/map_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sdcdrive {
namespace {

using nlohmann::json;

void expect_schema(const json& j, const std::string& schema) {
  const std::string got = j.value("schema", "");
  if (got != schema) throw std::invalid_argument("expected schema '" + schema + "', got '" + got + "'");
}

Vec2 vec(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected an [x, y] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::vector<Vec2> points(const json& j) {
  std::vector<Vec2> out;
  for (const auto& p : j) out.push_back(vec(p));
  return out;
}

Polygon region(const json& j) {
  if (j.contains("polygon")) return points(j.at("polygon"));
  if (j.contains("strip")) {
    const auto& s = j.at("strip");
    const double width = s.at("width").get<double>();
    if (!(width > 0.0)) throw std::invalid_argument("strip width must be > 0");
    return strip_polygon(points(s.at("centerline")), 0.5 * width);
  }
  throw std::invalid_argument("region needs 'polygon' or 'strip'");
}

Obstacle obstacle(const json& j) {
  Obstacle o;
  if (j.contains("footprint")) {
    o.footprint = points(j.at("footprint"));
  } else if (j.contains("box")) {
    const Vec2 lo = vec(j.at("box").at("min"));
    const Vec2 hi = vec(j.at("box").at("max"));
    if (!(hi.x > lo.x && hi.y > lo.y)) throw std::invalid_argument("obstacle box max must exceed min");
    o.footprint = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
  } else {
    throw std::invalid_argument("obstacle needs 'footprint' or 'box'");
  }
  o.height = j.at("height").get<double>();
  const int cls = j.at("class").get<int>();
  if (cls < 0 || cls > 22) throw std::invalid_argument("obstacle class id out of range");
  o.class_id = static_cast<std::uint8_t>(cls);
  return o;
}

NpcScript npc(const json& j) {
  NpcScript n;
  n.id = j.at("id").get<std::string>();
  n.kind = parse_actor_kind(j.at("kind").get<std::string>());
  n.behavior = parse_npc_behavior(j.value("behavior", "lawful"));
  const auto& trig = j.at("trigger");
  const std::string type = trig.at("type").get<std::string>();
  if (type == "time") {
    n.trigger.kind = NpcTrigger::Kind::kTime;
    n.trigger.time = trig.at("time").get<double>();
    if (n.trigger.time < 0.0) throw std::invalid_argument("npc '" + n.id + "' trigger time must be >= 0");
  } else if (type == "proximity") {
    n.trigger.kind = NpcTrigger::Kind::kProximity;
    n.trigger.point = vec(trig.at("point"));
    n.trigger.radius = trig.at("radius").get<double>();
    if (!(n.trigger.radius > 0.0)) throw std::invalid_argument("npc '" + n.id + "' trigger radius must be > 0");
  } else {
    throw std::invalid_argument("unknown trigger type: " + type);
  }
  for (const auto& p : j.at("path")) n.path.push_back({p.at("t").get<double>(), vec(p.at("p"))});
  n.intersection = j.value("intersection", "");
  n.double_green_s = j.value("double_green_s", 0.0);
  return n;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

WorldMap parse_map(const std::string& text) {
  const json j = json::parse(text);
  expect_schema(j, "sdcdrive.map/1");
  WorldMap m;
  m.name = j.at("name").get<std::string>();
  for (const auto& r : j.value("roads", json::array())) m.roads.push_back(region(r));
  for (const auto& s : j.value("sidewalks", json::array())) m.sidewalks.push_back(region(s));
  for (const auto& l : j.value("lanes", json::array())) {
    m.lanes.push_back({l.at("id").get<std::string>(), points(l.at("centerline"))});
  }
  for (const auto& o : j.value("obstacles", json::array())) m.obstacles.push_back(obstacle(o));
  for (const auto& i : j.value("intersections", json::array())) {
    Intersection x;
    x.id = i.at("id").get<std::string>();
    x.green_s = i.value("green_s", x.green_s);
    x.yellow_s = i.value("yellow_s", x.yellow_s);
    x.all_red_s = i.value("all_red_s", x.all_red_s);
    x.offset_s = i.value("offset_s", x.offset_s);
    m.intersections.push_back(x);
  }
  for (const auto& l : j.value("lights", json::array())) {
    TrafficLight t;
    t.id = l.at("id").get<std::string>();
    t.position = vec(l.at("position"));
    const auto line = points(l.at("stop_line"));
    if (line.size() != 2) throw std::invalid_argument("light '" + t.id + "' needs exactly one stop-line segment");
    t.stop_line = {line[0], line[1]};
    t.intersection = l.at("intersection").get<std::string>();
    t.approach = l.value("approach", 0);
    m.lights.push_back(t);
  }
  for (const auto& s : j.value("stop_signs", json::array())) {
    m.stop_signs.push_back({s.at("id").get<std::string>(), vec(s.at("position")), points(s.at("trigger_zone"))});
  }
  for (const auto& n : j.value("npcs", json::array())) m.npcs.push_back(npc(n));
  m.finalize();
  return m;
}

std::shared_ptr<const WorldMap> load_map(const std::filesystem::path& path) {
  return std::make_shared<const WorldMap>(parse_map(read_text_file(path)));
}

RouteSet parse_route_set(const std::string& text) {
  const json j = json::parse(text);
  expect_schema(j, "sdcdrive.routes/1");
  RouteSet set;
  set.name = j.at("name").get<std::string>();
  set.map = j.value("map", "");
  for (const auto& r : j.at("routes")) {
    set.routes.push_back(std::make_shared<const RouteSpec>(r.at("name").get<std::string>(), points(r.at("goals"))));
  }
  if (set.routes.empty()) throw std::invalid_argument("route set '" + set.name + "' has no routes");
  return set;
}

RouteSet load_route_set(const std::filesystem::path& path) { return parse_route_set(read_text_file(path)); }

ScenarioConfig parse_scenario_config(const std::string& text) {
  const json j = json::parse(text);
  expect_schema(j, "sdcdrive.scenario/1");
  ScenarioConfig c;
  if (j.contains("kind")) c.kind = parse_scenario_kind(j.at("kind").get<std::string>());
  c.weather = j.value("weather", c.weather);
  c.seed = j.value("seed", c.seed);
  c.dt = j.value("dt", c.dt);
  c.log_period = j.value("log_period", c.log_period);
  c.validate();
  return c;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  return parse_scenario_config(read_text_file(path));
}

}  // namespace sdcdrive
