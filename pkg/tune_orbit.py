"""Throwaway orbit-scenario tuning (not part of the package)."""
import math

import numpy as np

from camrelay import presets
from camrelay.handover import build_graph, CoDetectionLog
from camrelay.plan import execute, make_plan
from camrelay.scenario import build_scene, parse_config, stream
from camrelay.world import RobotState

cfg = parse_config(presets.orbit_config())
scene = build_scene(cfg)
cam = scene.cameras["room"]
graph = build_graph(CoDetectionLog(), scene.dists, cfg.n_min, nodes=["room"])
plan = make_plan(graph, "room", "room", presets.ORBIT_GOAL, cam.mask)

# goal in world coords
goal_w = ((presets.ORBIT_GOAL[0] - 6.0) / 12.0, (presets.ORBIT_GOAL[1] - 6.0) / 12.0)
print("goal world:", goal_w)

statuses = []
for seed in range(10):
    rng = stream(seed, "orbit-start")
    r = rng.uniform(1.2, 1.8)
    phi = rng.uniform(-math.pi, math.pi)
    x = goal_w[0] + r * math.cos(phi)
    y = goal_w[1] + r * math.sin(phi)
    # heading roughly tangential
    theta = phi + math.pi / 2 + rng.uniform(-0.3, 0.3)
    state = RobotState(x, y, theta, cfg.robot.footprint_radius)
    outcome, trace, _ = execute(
        plan, scene.world, scene.rigs, state, cfg.dt, cfg.executor, cfg.noise,
        {cid: stream(seed, "run", cid) for cid in scene.cameras},
    )
    statuses.append(outcome.status.value)
    # estimate orbit radius from tail of trace
    tail = [rec for rec in trace.records[-100:] if rec.detection]
    if tail:
        dists = [math.hypot(rec.detection.center[0] - 66, rec.detection.center[1] - 66) for rec in tail]
        print(f"seed {seed}: {outcome.status.value:9s} ticks={outcome.ticks_elapsed:5d} tail dist px: min={min(dists):.1f} max={max(dists):.1f}")
    else:
        print(f"seed {seed}: {outcome.status.value:9s} ticks={outcome.ticks_elapsed:5d}")

print("orbit count:", sum(s == "Orbit" for s in statuses), "/10")
