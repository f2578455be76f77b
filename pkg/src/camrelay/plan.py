"""High-level planning and relay execution.

A* over the handover camera graph (unit edge costs, zero heuristic: the
calibration-less graph carries no geometry to estimate with), expansion of a
camera path into per-camera waypoints, and the tick-by-tick executor that
hands control between cameras and classifies the mission outcome.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field as dc_field
from enum import Enum

import numpy as np

from .camera import CameraModel, Detection, DrivableMask, NoiseParams, detect
from .control import PdParams, PdState, low_level_command
from .errors import FieldDomainError, PlanningError
from .field import DistanceField, FieldParams, PotentialField, compute_potential, sample_gradient
from .handover import HandoverGraph
from .world import STOP, RobotState, VelocityCommand, WorldMap, check_collision, step_robot

Pixel = tuple[float, float]


def astar(graph: HandoverGraph, src: str, dst: str) -> list[str] | None:
    """Fewest-handovers camera path, or None if unreachable.

    Unit edge costs with a zero heuristic; among equal-length paths the
    lexicographically smallest camera-id sequence wins, which makes plans
    reproducible run to run.
    """
    for cam in (src, dst):
        if cam not in graph.nodes:
            raise PlanningError(f"unknown camera {cam!r}")
    if src == dst:
        return [src]
    frontier: list[tuple[int, tuple[str, ...]]] = [(0, (src,))]
    closed: set[str] = set()
    while frontier:
        cost, path = heapq.heappop(frontier)
        node = path[-1]
        if node == dst:
            return list(path)
        if node in closed:
            continue
        closed.add(node)
        for nxt in graph.successors(node):
            if nxt not in closed:
                heapq.heappush(frontier, (cost + 1, path + (nxt,)))
    return None


@dataclass(frozen=True)
class TraversalPlan:
    """Ordered cameras to relay through; waypoints[i] is the handover pixel
    to reach in cameras[i], the last camera drives to final_goal."""

    cameras: tuple[str, ...]
    waypoints: tuple[Pixel, ...]
    final_goal: Pixel

    def goal_in(self, index: int) -> Pixel:
        if index < len(self.waypoints):
            return self.waypoints[index]
        return self.final_goal


def make_plan(
    graph: HandoverGraph,
    src_camera: str,
    dst_camera: str,
    final_goal: Pixel,
    dst_mask: DrivableMask | None = None,
) -> TraversalPlan:
    """Plan a relay: A* camera path plus the handover pixel for each hop."""
    path = astar(graph, src_camera, dst_camera)
    if path is None:
        raise PlanningError(f"no camera route from {src_camera!r} to {dst_camera!r}")
    if dst_mask is not None and not dst_mask.contains(*final_goal):
        raise PlanningError(f"goal pixel {final_goal} is off the mask of {dst_camera!r}")
    waypoints = tuple(
        graph.edge(a, b).handover_pixel for a, b in zip(path, path[1:])
    )
    return TraversalPlan(cameras=tuple(path), waypoints=waypoints, final_goal=final_goal)


class MissionStatus(str, Enum):
    SUCCESS = "Success"
    COLLISION = "Collision"
    ORBIT = "Orbit"
    LOST_ROBOT = "LostRobot"
    TIMEOUT = "Timeout"


@dataclass(frozen=True)
class MissionOutcome:
    status: MissionStatus
    ticks_elapsed: int
    failing_camera: str | None = None
    trace_ref: str | None = None

    def to_json_dict(self, handovers: list[dict] | None = None) -> dict:
        out = {
            "status": self.status.value,
            "ticks": self.ticks_elapsed,
            "handovers": handovers if handovers is not None else [],
        }
        if self.failing_camera is not None:
            out["failing_camera"] = self.failing_camera
        if self.trace_ref is not None:
            out["trace"] = self.trace_ref
        return out


@dataclass(frozen=True)
class TickRecord:
    tick: int
    pose: tuple[float, float, float]
    active_camera: str
    detection: Detection | None
    command: VelocityCommand
    descent: tuple[float, float] | None

    def to_json_dict(self) -> dict:
        return {
            "tick": self.tick,
            "pose": list(self.pose),
            "camera": self.active_camera,
            "detection": (
                {"center": list(self.detection.center), "heading": self.detection.heading}
                if self.detection is not None
                else None
            ),
            "command": [self.command.v, self.command.omega],
            "descent": list(self.descent) if self.descent is not None else None,
        }


@dataclass
class TraversalTrace:
    """Tick-by-tick record of one mission, for replay and assertions."""

    records: list[TickRecord] = dc_field(default_factory=list)
    handovers: list[dict] = dc_field(default_factory=list)


@dataclass(frozen=True)
class ExecParams:
    """Executor thresholds, in pixels/ticks of the active camera."""

    r_goal: float = 5.0
    r_handover: float = 10.0
    t_max: int = 3000
    grace_ticks: int = 20
    r_orbit: float = 40.0
    t_orbit: int = 400


@dataclass(eq=False)
class CameraRig:
    """Control-side assets of one camera: the detector's mask lives on the
    camera; fields are computed on a border-hardened copy of it."""

    camera: CameraModel
    field_mask: DrivableMask
    dist: DistanceField
    field_params: FieldParams
    pd: PdParams


def execute(
    plan: TraversalPlan,
    world: WorldMap,
    rigs: dict[str, CameraRig],
    start: RobotState,
    dt: float,
    params: ExecParams,
    noise: NoiseParams,
    streams: dict[str, np.random.Generator],
) -> tuple[MissionOutcome, TraversalTrace, RobotState]:
    """Run one relay mission to completion.

    Per tick: detect in the active camera, descend that camera's potential
    toward its waypoint (or the final goal in the last camera), step the
    world.  Control advances to the next camera when the detection comes
    within r_handover of the waypoint; with no detection the previous command
    is held, never recomputed.  Outcomes: Success inside r_goal of the final
    goal, Collision from world truth, LostRobot after grace_ticks without a
    detection, Orbit after t_orbit consecutive detections circling inside
    (r_goal, r_orbit] of the current goal, else Timeout at t_max.
    """
    for cam in plan.cameras:
        if cam not in rigs:
            raise PlanningError(f"no rig for camera {cam!r}")

    fields: list[PotentialField] = []
    for i, cam in enumerate(plan.cameras):
        rig = rigs[cam]
        fields.append(compute_potential(rig.field_mask, rig.dist, plan.goal_in(i), rig.field_params))

    state = start
    first = detect(rigs[plan.cameras[0]].camera, state, NoiseParams(0.0, 0.0), np.random.default_rng(0))
    if first is None:
        raise PlanningError("robot is not detectable in the first camera of the plan")

    trace = TraversalTrace()
    leg = 0
    pd_state = PdState()
    held = STOP
    misses = 0
    orbit_run = 0

    def finish(status: MissionStatus, tick: int, failing: str | None) -> tuple[MissionOutcome, TraversalTrace, RobotState]:
        return MissionOutcome(status, tick, failing), trace, state

    for tick in range(params.t_max):
        active = plan.cameras[leg]
        rig = rigs[active]
        det = detect(rig.camera, state, noise, streams[active], tick=tick)
        goal = plan.goal_in(leg)
        last_leg = leg == len(plan.cameras) - 1
        descent: tuple[float, float] | None = None
        cmd = held

        if det is None:
            misses += 1
            orbit_run = 0
            if misses > params.grace_ticks:
                trace.records.append(TickRecord(tick, (state.x, state.y, state.theta), active, None, STOP, None))
                return finish(MissionStatus.LOST_ROBOT, tick + 1, active)
        else:
            misses = 0
            goal_dist = math.hypot(det.center[0] - goal[0], det.center[1] - goal[1])
            if last_leg and goal_dist <= params.r_goal:
                trace.records.append(TickRecord(tick, (state.x, state.y, state.theta), active, det, STOP, None))
                return finish(MissionStatus.SUCCESS, tick + 1, None)
            if not last_leg and goal_dist <= params.r_handover:
                trace.handovers.append({"tick": tick, "from": active, "to": plan.cameras[leg + 1]})
                leg += 1
                pd_state = PdState()
                orbit_run = 0
                # control is relinquished this tick; the incoming camera
                # takes over on its first detection
            else:
                if params.r_goal < goal_dist <= params.r_orbit:
                    orbit_run += 1
                    if orbit_run >= params.t_orbit:
                        trace.records.append(TickRecord(tick, (state.x, state.y, state.theta), active, det, STOP, None))
                        return finish(MissionStatus.ORBIT, tick + 1, active)
                else:
                    orbit_run = 0
                try:
                    gu, gv = sample_gradient(fields[leg], det.center)
                    descent = (-gu, -gv)
                    cmd, pd_state = low_level_command(fields[leg], det, rig.pd, pd_state)
                except FieldDomainError:
                    cmd = held  # detection off the field domain: coast
                    descent = None

        trace.records.append(TickRecord(tick, (state.x, state.y, state.theta), active, det, cmd, descent))
        held = cmd
        state = step_robot(state, cmd, dt)
        if check_collision(world, state):
            return finish(MissionStatus.COLLISION, tick + 1, plan.cameras[leg])

    return finish(MissionStatus.TIMEOUT, params.t_max, plan.cameras[leg])
