"""Scan L-corner field params for a junction potential well (throwaway)."""
import itertools
import math

import numpy as np

from camrelay.camera import CameraModel, segment_drivable
from camrelay.field import FieldParams, compute_potential, distance_transform, sample_gradient, with_border_obstacle
from camrelay.world import Rect, WorldMap, rasterize_view
from camrelay.errors import FieldDomainError

SCALE = 12.0


def build(pinch):
    obstacles = [Rect(0.0, 1.5, 6.5, 8.0)]
    if pinch:
        obstacles.append(Rect(*pinch))
    world = WorldMap(Rect(0, 0, 8, 8), tuple(obstacles))
    cam = CameraModel("L", 98, 98, np.array([[SCALE, 0, 0], [0, SCALE, 0], [0, 0, 1.0]]))
    view = rasterize_view(world, cam)
    cam.mask = segment_drivable(view, (12, 9))
    fm = with_border_obstacle(cam.mask)
    dist = distance_transform(fm)
    return fm, dist


def path_profile(field, pts):
    """descent dot path-direction along a pixel path; negative = well."""
    out = []
    for i, p in enumerate(pts[:-1]):
        q = pts[i + 1]
        tang = (q[0] - p[0], q[1] - p[1])
        n = math.hypot(*tang)
        tang = (tang[0] / n, tang[1] / n)
        try:
            gu, gv = sample_gradient(field, (float(p[0]), float(p[1])))
        except FieldDomainError:
            out.append(None)
            continue
        out.append((-gu * tang[0] - gv * tang[1]) / (math.hypot(gu, gv) or 1.0))
    return out


def centerline():
    return [(u, 9) for u in range(6, 88)] + [(87, v) for v in range(10, 85)]


for pinch in [None, (6.1, 1.1, 6.9, 1.9)]:
    fm, dist = build(pinch)
    for w_att, w_rep, d0 in itertools.product([0.7, 1.0], [8.0, 12.0, 20.0], [12.0, 16.0]):
        params = FieldParams(w_att, w_rep, d0)
        try:
            f_full = compute_potential(fm, dist, (87.0, 84.0), params)
            f_near = compute_potential(fm, dist, (87.0, 22.0), params)
        except Exception as e:
            print(f"pinch={bool(pinch)} {w_att}/{w_rep}/{d0}: {e}")
            continue
        prof_full = path_profile(f_full, centerline())
        prof_near = path_profile(f_near, [p for p in centerline() if p[1] <= 20])
        def worst(prof):
            vals = [v for v in prof if v is not None]
            return min(vals) if vals else float("nan")
        print(
            f"pinch={bool(pinch)} w_att={w_att} w_rep={w_rep} d0={d0}: "
            f"full-goal min t-dot={worst(prof_full):+.2f} near-goal min t-dot={worst(prof_near):+.2f}"
        )
