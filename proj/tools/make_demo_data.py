#!/usr/bin/env python3
"""Regenerates the bundled demo maps and route sets under data/."""

import json
import math
import os

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")


def arc(cx, cy, r, a0, a1, step_deg=7.5):
    n = max(2, int(abs(a1 - a0) / step_deg) + 1)
    return [[round(cx + r * math.cos(math.radians(a0 + (a1 - a0) * i / (n - 1))), 4),
             round(cy + r * math.sin(math.radians(a0 + (a1 - a0) * i / (n - 1))), 4)]
            for i in range(n)]


def box(x0, y0, x1, y1, height=8.0, cls=1):
    return {"box": {"min": [x0, y0], "max": [x1, y1]}, "height": height, "class": cls}


def extend(line, d):
    """Lengthens both ends so lane endpoints sit strictly inside the strip."""
    def push(a, b):
        n = math.dist(a, b)
        return [round(b[0] + (b[0] - a[0]) * d / n, 4), round(b[1] + (b[1] - a[1]) * d / n, 4)]
    return [push(line[1], line[0])] + line[1:-1] + [push(line[-2], line[-1])] if len(line) > 2 else \
        [push(line[1], line[0]), push(line[0], line[1])]


def write(rel, doc):
    path = os.path.join(ROOT, rel)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def straight_two_turn():
    r = 18.0
    center = [[0.0, 0.0], [0.0, 60.0]]
    center += arc(r, 60.0, r, 180.0, 90.0)[1:]   # right turn, ends heading +x
    center += [[48.0, 78.0]]
    center += arc(48.0, 78.0 + r, r, 270.0, 360.0)[1:]  # left turn, ends heading +y
    center += [[66.0, 136.0]]
    # Pull the start back so the route begins well inside the road.
    road_line = [[0.0, -10.0]] + center + [[66.0, 146.0]]
    goals = [center[0], [0.0, 20.0], [0.0, 40.0]] + center[1:]
    buildings = [
        box(-20, 5, -10, 25), box(-20, 35, -10, 55, 12), box(8, 10, 18, 40, 10),
        box(25, 50, 45, 68, 6), box(-22, 70, -9, 90), box(38, 90, 44, 102, 9),
        box(74, 85, 90, 110, 14), box(52, 110, 60, 130, 7),
    ]
    poles = [box(7.0, 50.0, 7.5, 50.5, 5.0, 5), box(58.0, 71.0, 58.5, 71.5, 5.0, 5)]
    write("maps/straight_two_turn.json", {
        "schema": "sdcdrive.map/1",
        "name": "straight_two_turn",
        "roads": [{"strip": {"centerline": extend(road_line, 2.0), "width": 10.0}}],
        "lanes": [{"id": "main", "centerline": road_line}],
        "obstacles": buildings + poles,
    })
    write("routes/straight_two_turn.json", {
        "schema": "sdcdrive.routes/1",
        "name": "straight_two_turn",
        "map": "straight_two_turn",
        "routes": [{"name": "loop_a", "goals": goals}],
    })


def adversarial_crossing():
    road = [[0.0, -10.0], [0.0, 130.0]]
    sidewalk_l = [[-7.0, -10.0], [-7.0, 130.0]]
    sidewalk_r = [[7.0, -10.0], [7.0, 130.0]]
    ped = {
        "id": "crosser", "kind": "pedestrian", "behavior": "adversarial-cross",
        "trigger": {"type": "proximity", "point": [0.0, 52.0], "radius": 14.0},
        "path": [{"t": 0.0, "p": [6.5, 60.0]}, {"t": 2.0, "p": [3.0, 60.0]},
                 {"t": 6.0, "p": [-3.0, 60.0]}, {"t": 8.0, "p": [-6.5, 60.0]}],
    }
    walker = {
        "id": "walker", "kind": "pedestrian", "behavior": "lawful",
        "trigger": {"type": "time", "time": 0.0},
        "path": [{"t": 0.0, "p": [-7.0, 10.0]}, {"t": 60.0, "p": [-7.0, 90.0]}],
    }
    write("maps/adversarial_crossing.json", {
        "schema": "sdcdrive.map/1",
        "name": "adversarial_crossing",
        "roads": [{"strip": {"centerline": extend(road, 2.0), "width": 10.0}}],
        "sidewalks": [{"strip": {"centerline": sidewalk_l, "width": 4.0}},
                      {"strip": {"centerline": sidewalk_r, "width": 4.0}}],
        "lanes": [{"id": "main", "centerline": road}],
        "obstacles": [box(-20, 0, -10, 40, 10), box(10, 20, 20, 50, 8), box(-20, 70, -10, 110, 12),
                      box(10, 75, 22, 100, 6)],
        "npcs": [ped, walker],
    })
    write("routes/adversarial_crossing.json", {
        "schema": "sdcdrive.routes/1",
        "name": "adversarial_crossing",
        "map": "adversarial_crossing",
        "routes": [{"name": "straight", "goals": [[0.0, 0.0], [0.0, 30.0], [0.0, 60.0], [0.0, 90.0],
                                                   [0.0, 120.0]]}],
    })


def intersection():
    # North-south main road through a signalised crossing at (0, 60); a stop
    # sign guards a side junction at (0, 120).
    ns = [[0.0, -10.0], [0.0, 160.0]]
    ew = [[-60.0, 60.0], [60.0, 60.0]]
    side = [[0.0, 120.0], [40.0, 120.0]]
    lights = [
        {"id": "ns_south", "position": [5.5, 53.0], "stop_line": [[0.0, 54.0], [5.0, 54.0]],
         "intersection": "x1", "approach": 0},
        {"id": "ns_north", "position": [-5.5, 67.0], "stop_line": [[-5.0, 66.0], [0.0, 66.0]],
         "intersection": "x1", "approach": 0},
        {"id": "ew_west", "position": [-7.0, 54.5], "stop_line": [[-6.0, 55.0], [-6.0, 60.0]],
         "intersection": "x1", "approach": 1},
    ]
    cross_car = {
        "id": "red_runner", "kind": "vehicle", "behavior": "runs-double-green",
        "trigger": {"type": "time", "time": 4.0}, "intersection": "x1", "double_green_s": 3.0,
        "path": [{"t": 0.0, "p": [-50.0, 57.5]}, {"t": 12.0, "p": [50.0, 57.5]}],
    }
    write("maps/intersection.json", {
        "schema": "sdcdrive.map/1",
        "name": "intersection",
        "roads": [{"strip": {"centerline": extend(ns, 2.0), "width": 10.0}},
                  {"strip": {"centerline": extend(ew, 2.0), "width": 10.0}},
                  {"strip": {"centerline": side, "width": 8.0}}],
        "sidewalks": [{"strip": {"centerline": [[-7.0, -10.0], [-7.0, 53.0]], "width": 4.0}},
                      {"strip": {"centerline": [[7.0, -10.0], [7.0, 53.0]], "width": 4.0}}],
        "lanes": [{"id": "ns", "centerline": ns}, {"id": "ew", "centerline": ew}],
        "obstacles": [box(-30, 0, -10, 45, 15), box(10, 0, 30, 45, 10), box(-30, 75, -10, 110, 12),
                      box(10, 75, 30, 112, 9), box(10, 126, 30, 150, 7)],
        "intersections": [{"id": "x1", "green_s": 10.0, "yellow_s": 2.0, "all_red_s": 1.0,
                           "offset_s": 0.0}],
        "lights": lights,
        "stop_signs": [{"id": "side_stop", "position": [5.5, 113.0],
                        "trigger_zone": [[0.0, 110.0], [5.0, 110.0], [5.0, 116.0], [0.0, 116.0]]}],
        "npcs": [cross_car],
    })
    write("routes/intersection.json", {
        "schema": "sdcdrive.routes/1",
        "name": "intersection",
        "map": "intersection",
        "routes": [{"name": "north", "goals": [[2.5, 0.0], [2.5, 30.0], [2.5, 60.0], [2.5, 90.0],
                                                [2.5, 150.0]]}],
    })


if __name__ == "__main__":
    straight_two_turn()
    adversarial_crossing()
    intersection()
