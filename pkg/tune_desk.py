"""Throwaway tuning harness (not part of the package)."""
import time

import numpy as np

from camrelay.camera import ZERO_NOISE, detect as _detect


def _see(scene, cid, state):
    return _detect(scene.cameras[cid], state, ZERO_NOISE, np.random.default_rng(0)) is not None

from camrelay import presets
from camrelay.handover import ExplorationParams, build_graph, run_exploration
from camrelay.plan import execute, make_plan
from camrelay.scenario import build_scene, parse_config, stream

t0 = time.perf_counter()
cfg = parse_config(presets.desk_config())
scene = build_scene(cfg)
t1 = time.perf_counter()
print(f"scene build: {t1-t0:.2f}s")
for cid, cam in scene.cameras.items():
    print(f"  cam {cid}: {cam.width}x{cam.height} mask drivable={int(cam.mask.cells.sum())}")

walk_stream = stream(cfg.seed, "walk")
log = run_exploration(
    scene.world,
    scene.cameras,
    scene.start_state(),
    cfg.exploration,
    cfg.noise,
    cfg.dt,
    scene.detect_streams("explore"),
    walk_stream,
)
t2 = time.perf_counter()
print(f"exploration: {t2-t1:.2f}s, samples={len(log.samples)}")
from collections import Counter

pair_counts = Counter((s.cam_a, s.cam_b) for s in log.samples)
for pair, n in sorted(pair_counts.items()):
    print(f"  {pair}: {n}")

graph = build_graph(log, scene.dists, cfg.n_min, nodes=list(scene.cameras), forced_edges=scene.forced_edges)
print("edges:")
for (src, dst), e in sorted(graph.edges.items()):
    print(f"  {src}->{dst} @ {e.handover_pixel} entry {e.entry_pixel} n={e.sample_count} clr={e.clearance:.1f}")

# run the 20-mission cycle
missions = presets.desk_missions()
mission_list = missions["missions"] * missions["cycles"]
state = scene.start_state()
current_cam = None
results = []
t3 = time.perf_counter()
for i, m in enumerate(mission_list):
    # find a camera that currently sees the robot
    if current_cam is None or not _see(scene, current_cam, state):
        seeing = [cid for cid in scene.cameras if _see(scene, cid, state)]
        if not seeing:
            print(f"mission {i}: robot not visible anywhere at {state}")
            break
        current_cam = seeing[0]
    plan = make_plan(graph, current_cam, m["camera"], tuple(m["goal"]), scene.cameras[m["camera"]].mask)
    outcome, trace, state = execute(
        plan, scene.world, scene.rigs, state, cfg.dt, cfg.executor, cfg.noise,
        scene.detect_streams(("run", i)),
    )
    results.append(outcome.status.value)
    print(f"mission {i}: {current_cam}->{m['camera']} path={list(plan.cameras)} -> {outcome.status.value} in {outcome.ticks_elapsed} ticks, handovers={len(trace.handovers)}")
    current_cam = m["camera"] if outcome.status.value == "Success" else None

t4 = time.perf_counter()
print(f"missions: {t4-t3:.2f}s; success {sum(r=='Success' for r in results)}/{len(results)}")
