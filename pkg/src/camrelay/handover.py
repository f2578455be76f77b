"""Camera handover discovery.

While the robot explores, every tick in which two cameras see it at once is
logged as a pixel-to-pixel correspondence.  Per ordered camera pair, the
sample whose pixels sit farthest from the nearest obstacle in *both* views
(max-min clearance) becomes the handover point of a directed graph edge.
Also hosts the virtual-camera split used to tame potential-field pathologies
at sharp corners, and the exploration driver that produces the log.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .camera import CameraModel, Detection, DrivableMask, NoiseParams, detect
from .control import WalkParams, WalkState, random_walk_command
from .errors import ConfigError, OffMaskError
from .field import DistanceField, PotentialField, distance_transform, sample_gradient
from .world import RobotState, WorldMap, check_collision, step_robot

Pixel = tuple[float, float]


@dataclass(frozen=True)
class CoDetection:
    """One simultaneous-visibility record for an ordered camera pair."""

    cam_a: str
    pixel_a: Pixel
    cam_b: str
    pixel_b: Pixel
    tick: int


@dataclass
class CoDetectionLog:
    samples: list[CoDetection] = dc_field(default_factory=list)

    def pair_samples(self, cam_a: str, cam_b: str) -> list[CoDetection]:
        return [s for s in self.samples if s.cam_a == cam_a and s.cam_b == cam_b]

    def cameras(self) -> list[str]:
        seen: dict[str, None] = {}
        for s in self.samples:
            seen.setdefault(s.cam_a)
            seen.setdefault(s.cam_b)
        return list(seen)

    def to_json_dict(self) -> dict:
        return {
            "samples": [
                {
                    "cam_a": s.cam_a,
                    "pixel_a": list(s.pixel_a),
                    "cam_b": s.cam_b,
                    "pixel_b": list(s.pixel_b),
                    "tick": s.tick,
                }
                for s in self.samples
            ]
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CoDetectionLog":
        return cls(
            samples=[
                CoDetection(
                    cam_a=s["cam_a"],
                    pixel_a=tuple(s["pixel_a"]),
                    cam_b=s["cam_b"],
                    pixel_b=tuple(s["pixel_b"]),
                    tick=int(s["tick"]),
                )
                for s in data["samples"]
            ]
        )


def log_codetections(
    log: CoDetectionLog,
    detections: list[Detection],
    masks: dict[str, DrivableMask],
) -> int:
    """Append one sample per ordered pair of cameras detecting simultaneously.

    All detections must share a tick.  Samples whose reported center falls off
    either drivable mask (possible under detector noise) are dropped so that
    every logged pixel is a valid mask cell.  Returns the number appended.
    """
    if not detections:
        return 0
    ticks = {d.tick for d in detections}
    if len(ticks) > 1:
        raise ValueError(f"co-detections must share one tick, got {sorted(ticks)}")
    usable = [d for d in detections if masks[d.camera_id].contains(*d.center)]
    appended = 0
    for a in usable:
        for b in usable:
            if a.camera_id == b.camera_id:
                continue
            log.samples.append(
                CoDetection(
                    cam_a=a.camera_id,
                    pixel_a=a.center,
                    cam_b=b.camera_id,
                    pixel_b=b.center,
                    tick=a.tick,
                )
            )
            appended += 1
    return appended


@dataclass(frozen=True)
class HandoverEdge:
    """Directed edge src -> dst: drive to handover_pixel in src and the dst
    camera will see the robot near entry_pixel."""

    src: str
    dst: str
    handover_pixel: Pixel
    entry_pixel: Pixel
    sample_count: int
    clearance: float
    configured: bool = False

    def to_json_dict(self) -> dict:
        return {
            "src": self.src,
            "dst": self.dst,
            "handover": list(self.handover_pixel),
            "entry": list(self.entry_pixel),
            "count": self.sample_count,
            "clearance": self.clearance,
            "configured": self.configured,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "HandoverEdge":
        return cls(
            src=data["src"],
            dst=data["dst"],
            handover_pixel=tuple(data["handover"]),
            entry_pixel=tuple(data["entry"]),
            sample_count=int(data["count"]),
            clearance=float(data["clearance"]),
            configured=bool(data["configured"]),
        )


@dataclass
class HandoverGraph:
    """Directed camera graph; at most one edge per ordered (src, dst)."""

    nodes: list[str] = dc_field(default_factory=list)
    edges: dict[tuple[str, str], HandoverEdge] = dc_field(default_factory=dict)

    def add_edge(self, edge: HandoverEdge) -> None:
        for cam in (edge.src, edge.dst):
            if cam not in self.nodes:
                self.nodes.append(cam)
        self.edges[(edge.src, edge.dst)] = edge

    def successors(self, cam: str) -> list[str]:
        return sorted(dst for (src, dst) in self.edges if src == cam)

    def edge(self, src: str, dst: str) -> HandoverEdge:
        return self.edges[(src, dst)]

    def to_json_dict(self) -> dict:
        ordered = sorted(self.edges.values(), key=lambda e: (e.src, e.dst))
        return {
            "nodes": sorted(self.nodes),
            "edges": [e.to_json_dict() for e in ordered],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "HandoverGraph":
        graph = cls(nodes=list(data["nodes"]))
        for raw in data["edges"]:
            graph.add_edge(HandoverEdge.from_json_dict(raw))
        return graph


def select_handover(
    samples: list[CoDetection],
    dist_src: DistanceField,
    dist_dst: DistanceField,
    n_min: int,
) -> HandoverEdge | None:
    """Pick the handover point for one ordered pair.

    Score of a sample is the smaller of its two clearances (distance to the
    nearest obstacle in either view); the max-score sample wins, earliest
    tick breaking ties.  Pairs with fewer than n_min samples produce no edge.
    """
    if len(samples) < n_min:
        return None
    best: CoDetection | None = None
    best_score = -1.0
    for s in samples:
        score = min(dist_src.at(*s.pixel_a), dist_dst.at(*s.pixel_b))
        if score > best_score or (score == best_score and best is not None and s.tick < best.tick):
            best = s
            best_score = score
    assert best is not None
    return HandoverEdge(
        src=best.cam_a,
        dst=best.cam_b,
        handover_pixel=best.pixel_a,
        entry_pixel=best.pixel_b,
        sample_count=len(samples),
        clearance=best_score,
    )


def build_graph(
    log: CoDetectionLog,
    dists: dict[str, DistanceField],
    n_min: int,
    nodes: list[str] | None = None,
    forced_edges: list[HandoverEdge] | None = None,
) -> HandoverGraph:
    """Turn a co-detection log into the directed handover camera graph.

    One node per configured camera (plus any camera appearing in the log),
    one edge per ordered pair that clears the n_min sample threshold.
    Configured (forced) edges, e.g. from virtual-camera splits, are added
    last and take precedence over learned ones.
    """
    graph = HandoverGraph(nodes=list(nodes) if nodes else [])
    per_pair: dict[tuple[str, str], list[CoDetection]] = {}
    for s in log.samples:
        per_pair.setdefault((s.cam_a, s.cam_b), []).append(s)
    for cam in log.cameras():
        if cam not in graph.nodes:
            graph.nodes.append(cam)
    for (cam_a, cam_b) in sorted(per_pair):
        if cam_a not in dists or cam_b not in dists:
            raise ConfigError(f"no distance field for camera pair ({cam_a}, {cam_b})")
        edge = select_handover(per_pair[(cam_a, cam_b)], dists[cam_a], dists[cam_b], n_min)
        if edge is not None:
            graph.add_edge(edge)
    for edge in forced_edges or []:
        graph.add_edge(edge)
    return graph


@dataclass(eq=False)
class VirtualSplit:
    """Partition of a parent camera's drivable pixels into two sub-views
    joined at an interface pixel on the partition boundary."""

    parent: str
    partition: np.ndarray  # True = first half, over the full image grid
    interface: tuple[int, int]


def _connected(cells: np.ndarray) -> bool:
    """True iff the True cells form a single 4-connected component."""
    total = int(cells.sum())
    if total == 0:
        return False
    vs, us = np.nonzero(cells)
    stack = [(int(us[0]), int(vs[0]))]
    seen = np.zeros_like(cells)
    seen[vs[0], us[0]] = True
    count = 1
    h, w = cells.shape
    while stack:
        u, v = stack.pop()
        for nu, nv in ((u + 1, v), (u - 1, v), (u, v + 1), (u, v - 1)):
            if 0 <= nu < w and 0 <= nv < h and cells[nv, nu] and not seen[nv, nu]:
                seen[nv, nu] = True
                count += 1
                stack.append((nu, nv))
    return count == total


def _snap_to_mask(mask: DrivableMask, pixel: tuple[int, int]) -> tuple[float, float]:
    """Nearest drivable cell of the mask to the given pixel."""
    if mask.contains(*pixel):
        return float(pixel[0]), float(pixel[1])
    vs, us = np.nonzero(mask.cells)
    d2 = (us - pixel[0]) ** 2 + (vs - pixel[1]) ** 2
    k = int(np.argmin(d2))
    return float(us[k]), float(vs[k])


def split_virtual_camera(
    camera: CameraModel,
    partition: np.ndarray,
    interface: tuple[int, int],
    names: tuple[str, str] | None = None,
) -> tuple[CameraModel, CameraModel, tuple[HandoverEdge, HandoverEdge]]:
    """Split one physical camera into two virtual ones.

    Both share the parent homography and image size; their masks are the two
    halves of the parent mask under the partition grid.  A pair of configured
    edges joins them at the interface pixel (snapped onto each half's own
    mask, since a single pixel can belong to only one half).  Detections in
    the parent afterwards belong to whichever half contains their pixel.
    """
    if camera.mask is None:
        raise ConfigError(f"camera {camera.cam_id!r} has no mask to split")
    partition = np.asarray(partition, dtype=bool)
    if partition.shape != camera.mask.cells.shape:
        raise ConfigError("partition grid size differs from the camera mask")

    half_a = camera.mask.cells & partition
    half_b = camera.mask.cells & ~partition
    if not half_a.any() or not half_b.any():
        raise ConfigError("virtual split leaves an empty half")
    if not _connected(half_a) or not _connected(half_b):
        raise ConfigError("virtual split halves must each be 4-connected")

    iu, iv = int(interface[0]), int(interface[1])
    if not camera.mask.contains(iu, iv):
        raise ConfigError(f"interface pixel {interface} is not on the parent mask")
    neighbors = [(iu + 1, iv), (iu - 1, iv), (iu, iv + 1), (iu, iv - 1), (iu, iv)]
    touches_a = any(0 <= v < half_a.shape[0] and 0 <= u < half_a.shape[1] and half_a[v, u] for u, v in neighbors)
    touches_b = any(0 <= v < half_b.shape[0] and 0 <= u < half_b.shape[1] and half_b[v, u] for u, v in neighbors)
    if not (touches_a and touches_b):
        raise ConfigError(f"interface pixel {interface} is not adjacent to both halves")

    name_a, name_b = names if names else (camera.cam_id + "a", camera.cam_id + "b")
    cam_a = CameraModel(name_a, camera.width, camera.height, camera.h.copy(), DrivableMask(half_a))
    cam_b = CameraModel(name_b, camera.width, camera.height, camera.h.copy(), DrivableMask(half_b))

    px_a = _snap_to_mask(cam_a.mask, (iu, iv))
    px_b = _snap_to_mask(cam_b.mask, (iu, iv))
    edge_ab = HandoverEdge(name_a, name_b, px_a, px_b, sample_count=0, clearance=0.0, configured=True)
    edge_ba = HandoverEdge(name_b, name_a, px_b, px_a, sample_count=0, clearance=0.0, configured=True)
    return cam_a, cam_b, (edge_ab, edge_ba)


def descent_clash(field: PotentialField, pixels: list[tuple[int, int]], goal_margin: float = 3.0) -> float:
    """Largest change of steepest-descent direction between consecutive
    pixels of a path, skipping pixels within goal_margin of the field goal
    (where the direction degenerates).  Diagnostic for corner pathologies."""
    directions: list[float | None] = []
    for (u, v) in pixels:
        if math.hypot(u - field.goal[0], v - field.goal[1]) <= goal_margin:
            directions.append(None)
            continue
        gu, gv = sample_gradient(field, (float(u), float(v)))
        directions.append(math.atan2(-gv, -gu))
    worst = 0.0
    for a, b in zip(directions, directions[1:]):
        if a is None or b is None:
            continue
        diff = abs(math.atan2(math.sin(b - a), math.cos(b - a)))
        worst = max(worst, diff)
    return worst


@dataclass(frozen=True)
class ExplorationParams:
    """Per-camera random-walk campaign settings."""

    ticks: int = 10_000
    walk: WalkParams = WalkParams()
    walk_margin_px: int = 4
    miss_patience: int = 3
    max_placement_tries: int = 200


def _eroded(mask: DrivableMask, margin_px: int) -> DrivableMask:
    """Mask shrunk by margin_px of clearance (via the distance transform)."""
    if margin_px <= 0:
        return mask
    dist = distance_transform(mask)
    return DrivableMask(dist.d > margin_px)


def _place_robot(
    world: WorldMap,
    camera: CameraModel,
    walk_mask: DrivableMask,
    template: RobotState,
    rng: np.random.Generator,
    tries: int,
) -> RobotState | None:
    """Drop the robot on a random walkable cell of the camera, collision-free."""
    vs, us = np.nonzero(walk_mask.cells)
    if len(us) == 0:
        return None
    h_inv = np.linalg.inv(camera.h)
    for _ in range(tries):
        k = int(rng.integers(len(us)))
        g = h_inv @ np.array([float(us[k]), float(vs[k]), 1.0])
        if abs(g[2]) < 1e-12:
            continue
        x, y = g[0] / g[2], g[1] / g[2]
        state = RobotState(x=x, y=y, theta=rng.uniform(-math.pi, math.pi), footprint_radius=template.footprint_radius)
        if not check_collision(world, state):
            return state
    return None


def run_exploration(
    world: WorldMap,
    cameras: dict[str, CameraModel],
    robot_template: RobotState,
    params: ExplorationParams,
    noise: NoiseParams,
    dt: float,
    streams: dict[str, np.random.Generator],
    walk_stream: np.random.Generator,
) -> CoDetectionLog:
    """Drive random walks through every camera and log co-detections.

    The tick budget is split evenly across cameras, mirroring a per-camera
    installation walk.  Within an episode the robot bounces inside an eroded
    copy of that camera's mask (margin keeps the footprint off the walls);
    collisions or lost detections just re-place the robot and continue.
    Each tick, every camera runs its detector and simultaneous detections go
    into the log.
    """
    masks = {cid: cam.mask for cid, cam in cameras.items()}
    for cid, mask in masks.items():
        if mask is None:
            raise ConfigError(f"camera {cid!r} has no drivable mask; segment first")
    log = CoDetectionLog()
    cam_ids = list(cameras)
    per_episode = params.ticks // len(cam_ids)
    tick = 0
    for cid in cam_ids:
        cam = cameras[cid]
        walk_mask = _eroded(cam.mask, params.walk_margin_px)
        state = _place_robot(world, cam, walk_mask, robot_template, walk_stream, params.max_placement_tries)
        if state is None:
            raise ConfigError(f"camera {cid!r} has no collision-free walkable cell")
        walk = WalkState()
        misses = 0
        for _ in range(per_episode):
            detections = []
            for other_id in cam_ids:
                d = detect(cameras[other_id], state, noise, streams[other_id], tick=tick)
                if d is not None:
                    detections.append(d)
            log_codetections(log, detections, masks)

            own = next((d for d in detections if d.camera_id == cid), None)
            cmd = None
            if own is not None:
                misses = 0
                try:
                    cmd = random_walk_command(walk_mask, own, params.walk, walk, walk_stream)
                except OffMaskError:
                    cmd = None
            if cmd is None:
                misses += 1
                if misses >= params.miss_patience:
                    placed = _place_robot(world, cam, walk_mask, robot_template, walk_stream, params.max_placement_tries)
                    if placed is not None:
                        state = placed
                        walk.reset()
                        misses = 0
                tick += 1
                continue

            state = step_robot(state, cmd, dt)
            if check_collision(world, state):
                placed = _place_robot(world, cam, walk_mask, robot_template, walk_stream, params.max_placement_tries)
                if placed is not None:
                    state = placed
                walk.reset()
            tick += 1
    return log
