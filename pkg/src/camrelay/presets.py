"""Built-in scenario configurations.

Three synthetic installations used by the test suite and handy as CLI demos:

* ``desk``   - three rooms along a corridor, four overlapping cameras; the
  standard relay benchmark.
* ``orbit``  - one large empty room with a goal far from every obstacle and a
  fast robot; reproduces the goal-circling failure mode.
* ``lcorner``- a sharp L-shaped corridor under a single camera, with an
  optional virtual split at the corner.

Run ``python -m camrelay.presets <dir>`` to write them out as JSON files.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

# px per meter used by every preset homography
SCALE = 12.0


def desk_config() -> dict:
    wall_y = (2.5, 2.8)
    return {
        "seed": 42,
        "dt": 0.05,
        "world": {
            "bounds": [0.0, 0.0, 18.0, 8.0],
            "obstacles": [
                # corridor wall with three door gaps
                [0.0, wall_y[0], 2.0, wall_y[1]],
                [4.0, wall_y[0], 8.0, wall_y[1]],
                [10.0, wall_y[0], 14.0, wall_y[1]],
                [16.0, wall_y[0], 18.0, wall_y[1]],
                # room dividers
                [5.85, 2.8, 6.15, 8.0],
                [11.85, 2.8, 12.15, 8.0],
            ],
        },
        "robot": {"footprint_radius": 0.18, "v_max": 0.8, "omega_max": 3.0, "start": [3.0, 5.0, -1.5707963267948966]},
        "noise": {"sigma_px": 0.0, "sigma_theta": 0.0},
        "cameras": [
            {
                "id": "a",
                "width": 74,
                "height": 88,
                "homography": [SCALE, 0, 3.0, 0, SCALE, -10.8, 0, 0, 1],
                "seed_pixel": [39, 55],
                "gains": {"kp": 3.0, "kd": 0.5, "v_const": 0.5, "omega_max": 2.5},
                "field": {"w_att": 1.0, "w_rep": 4.0, "d0": 8.0},
            },
            {
                "id": "b",
                "width": 74,
                "height": 88,
                "homography": [SCALE, 0, -70.2, 0, SCALE, -10.8, 0, 0, 1],
                "seed_pixel": [38, 55],
                "gains": {"kp": 3.0, "kd": 0.5, "v_const": 0.5, "omega_max": 2.5},
                "field": {"w_att": 1.0, "w_rep": 4.0, "d0": 8.0},
            },
            {
                "id": "c",
                "width": 72,
                "height": 88,
                "homography": [SCALE, 0, -146.4, 0, SCALE, -10.8, 0, 0, 1],
                "seed_pixel": [34, 55],
                "gains": {"kp": 3.0, "kd": 0.5, "v_const": 0.5, "omega_max": 2.5},
                "field": {"w_att": 1.0, "w_rep": 4.0, "d0": 8.0},
            },
            {
                "id": "cor",
                "width": 216,
                "height": 42,
                "homography": [SCALE, 0, 0, 0, SCALE, 0, 0, 0, 1],
                "seed_pixel": [108, 15],
                "gains": {"kp": 3.0, "kd": 0.5, "v_const": 0.5, "omega_max": 2.5},
                "field": {"w_att": 1.0, "w_rep": 4.0, "d0": 8.0},
            },
        ],
        "exploration": {
            "ticks": 10000,
            "v_const": 0.5,
            "lookahead_px": 8.0,
            "rotate_speed": 1.5,
            "heading_tol": 0.12,
            "walk_margin_px": 4,
        },
        "executor": {
            "r_goal": 5.0,
            "r_handover": 10.0,
            "t_max": 3000,
            "grace_ticks": 20,
            "r_orbit": 40.0,
            "t_orbit": 400,
        },
        "handover": {"n_min": 10},
    }


def desk_missions() -> dict:
    """Destination cycle for the desk scenario: goal pixels in each camera."""
    cycle = [
        {"camera": "b", "goal": [38.0, 55.0]},
        {"camera": "cor", "goal": [168.0, 15.0]},
        {"camera": "c", "goal": [34.0, 55.0]},
        {"camera": "a", "goal": [39.0, 55.0]},
    ]
    return {"missions": cycle, "cycles": 5}


def orbit_config() -> dict:
    return {
        "seed": 7,
        "dt": 0.05,
        "world": {"bounds": [0.0, 0.0, 10.0, 10.0], "obstacles": []},
        "robot": {"footprint_radius": 0.18, "v_max": 1.5, "omega_max": 1.2, "start": [3.0, 5.0, 1.2]},
        "noise": {"sigma_px": 0.0, "sigma_theta": 0.0},
        "cameras": [
            {
                "id": "room",
                "width": 132,
                "height": 132,
                "homography": [SCALE, 0, 6.0, 0, SCALE, 6.0, 0, 0, 1],
                "seed_pixel": [66, 66],
                "gains": {"kp": 4.0, "kd": 0.2, "v_const": 1.4, "omega_max": 1.0},
                "field": {"w_att": 1.0, "w_rep": 3.0, "d0": 8.0},
            }
        ],
        "exploration": {"ticks": 2000, "v_const": 0.6},
        "executor": {
            "r_goal": 5.0,
            "r_handover": 10.0,
            "t_max": 1500,
            "grace_ticks": 20,
            "r_orbit": 40.0,
            "t_orbit": 400,
        },
    }


ORBIT_GOAL = (66.0, 66.0)


def lcorner_config(split: bool) -> dict:
    cfg = {
        "seed": 5,
        "dt": 0.05,
        "world": {
            "bounds": [0.0, 0.0, 8.0, 8.0],
            "obstacles": [[0.0, 1.5, 6.5, 8.0]],
        },
        "robot": {"footprint_radius": 0.15, "v_max": 0.8, "omega_max": 3.0, "start": [1.0, 0.75, 0.0]},
        "noise": {"sigma_px": 0.0, "sigma_theta": 0.0},
        "cameras": [
            {
                "id": "L",
                "width": 98,
                "height": 98,
                "homography": [SCALE, 0, 0, 0, SCALE, 0, 0, 0, 1],
                "seed_pixel": [12, 9],
                "gains": {"kp": 3.0, "kd": 0.5, "v_const": 0.4, "omega_max": 2.5},
                "field": {"w_att": 0.7, "w_rep": 20.0, "d0": 12.0},
            }
        ],
        "exploration": {"ticks": 4000, "v_const": 0.4, "walk_margin_px": 3},
        "executor": {
            "r_goal": 5.0,
            "r_handover": 10.0,
            "t_max": 4000,
            "grace_ticks": 60,
            "r_orbit": 40.0,
            "t_orbit": 400,
        },
    }
    if split:
        cfg["cameras"][0]["split"] = {
            "axis": "v",
            "at": 22,
            "interface": [87, 22],
            "names": ["la", "lb"],
        }
    return cfg


LCORNER_GOAL = (87.0, 84.0)


def write_scenarios(out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, cfg in [
        ("desk", desk_config()),
        ("orbit", orbit_config()),
        ("lcorner", lcorner_config(split=False)),
        ("lcorner_split", lcorner_config(split=True)),
    ]:
        path = out / f"{name}.json"
        path.write_text(json.dumps(cfg, indent=2, sort_keys=True) + "\n")
        written.append(path)
    missions = out / "desk_missions.json"
    missions.write_text(json.dumps(desk_missions(), indent=2, sort_keys=True) + "\n")
    written.append(missions)
    return written


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "scenarios"
    for p in write_scenarios(target):
        print(p)
