"""Throwaway L-corner tuning (not part of the package)."""
import math

from camrelay import presets
from camrelay.field import compute_potential
from camrelay.handover import CoDetectionLog, build_graph, descent_clash
from camrelay.plan import execute, make_plan
from camrelay.scenario import build_scene, parse_config, stream
from camrelay.world import RobotState


def centerline(split_at=None):
    """Arm1 centerline (v=9) then arm2 centerline (u=87)."""
    pts = [(u, 9) for u in range(6, 88)]
    pts += [(87, v) for v in range(10, 85)]
    if split_at is None:
        return pts
    return [p for p in pts if p[1] <= split_at], [p for p in pts if p[1] > split_at]


def run(split: bool, seeds=range(10), verbose=True):
    cfg = parse_config(presets.lcorner_config(split))
    scene = build_scene(cfg)
    graph = build_graph(CoDetectionLog(), scene.dists, cfg.n_min, nodes=list(scene.cameras), forced_edges=scene.forced_edges)
    if split:
        src, dst = "la", "lb"
    else:
        src = dst = "L"
    plan = make_plan(graph, src, dst, presets.LCORNER_GOAL, scene.cameras[dst].mask)
    statuses = []
    for seed in seeds:
        rng = stream(seed, "lcorner-start")
        x = rng.uniform(0.6, 2.0)
        y = rng.uniform(0.5, 1.0)
        theta = rng.uniform(-0.4, 0.4)
        state = RobotState(x, y, theta, cfg.robot.footprint_radius)
        outcome, trace, _ = execute(
            plan, scene.world, scene.rigs, state, cfg.dt, cfg.executor, cfg.noise,
            {cid: stream(seed, "run", cid) for cid in scene.cameras},
        )
        statuses.append(outcome.status.value)
        if verbose:
            last = trace.records[-1]
            print(f"  seed {seed}: {outcome.status.value:9s} ticks={outcome.ticks_elapsed:5d} last pose=({last.pose[0]:.2f},{last.pose[1]:.2f}) cam={last.active_camera}")
    return statuses, scene, cfg, graph


print("=== unsplit ===")
st_u, scene_u, cfg_u, _ = run(False)
print("success:", sum(s == "Success" for s in st_u), "/10")

rig = scene_u.rigs["L"]
f_unsplit = compute_potential(rig.field_mask, rig.dist, presets.LCORNER_GOAL, rig.field_params)
clash_u = descent_clash(f_unsplit, centerline())
print(f"unsplit clash: {clash_u:.3f} rad ({math.degrees(clash_u):.1f} deg)  > pi/2? {clash_u > math.pi/2}")

print("=== split ===")
st_s, scene_s, cfg_s, graph_s = run(True)
print("success:", sum(s == "Success" for s in st_s), "/10")

part_a, part_b = centerline(split_at=22)
rig_a, rig_b = scene_s.rigs["la"], scene_s.rigs["lb"]
edge = graph_s.edge("la", "lb")
f_a = compute_potential(rig_a.field_mask, rig_a.dist, edge.handover_pixel, rig_a.field_params)
f_b = compute_potential(rig_b.field_mask, rig_b.dist, presets.LCORNER_GOAL, rig_b.field_params)
# drop centerline pixels whose stencil leaves each half's domain
from camrelay.errors import FieldDomainError
from camrelay.field import sample_gradient


def valid(f, pts):
    keep = []
    for p in pts:
        try:
            sample_gradient(f, (float(p[0]), float(p[1])))
            keep.append(p)
        except FieldDomainError:
            pass
    return keep


clash_a = descent_clash(f_a, valid(f_a, part_a))
clash_b = descent_clash(f_b, valid(f_b, part_b))
clash_s = max(clash_a, clash_b)
print(f"split clash: {clash_s:.3f} rad ({math.degrees(clash_s):.1f} deg)  < pi/2? {clash_s < math.pi/2}")
