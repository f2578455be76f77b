"""Continuous 2D ground-truth world.

Axis-aligned rectangular map and obstacles, unicycle robot kinematics,
disc/rectangle collision tests, and rasterization of world occupancy into a
camera image plane.  Everything here is simulation truth; controllers never
see these coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import ConfigError

if TYPE_CHECKING:
    from .camera import CameraModel

# Homogeneous w below this is treated as at/behind the horizon.
EPS_W = 1e-9

TWO_PI = 2.0 * math.pi


def _wrap(angle: float) -> float:
    """Normalize to (-pi, pi]."""
    if -math.pi < angle <= math.pi:
        return angle
    return math.pi - (math.pi - angle) % TWO_PI


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rectangle [x0, x1] x [y0, y1] in meters."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self) -> None:
        if not (self.x1 >= self.x0 and self.y1 >= self.y0):
            raise ConfigError(f"degenerate rectangle {self}")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def distance_to(self, x: float, y: float) -> float:
        """Euclidean distance from (x, y) to the rectangle (0 inside)."""
        dx = max(self.x0 - x, 0.0, x - self.x1)
        dy = max(self.y0 - y, 0.0, y - self.y1)
        return math.hypot(dx, dy)


@dataclass(frozen=True)
class WorldMap:
    """World bounds plus static obstacle rectangles, all in meters."""

    bounds: Rect
    obstacles: tuple[Rect, ...] = ()

    def __post_init__(self) -> None:
        if self.bounds.width <= 0.0 or self.bounds.height <= 0.0:
            raise ConfigError("world bounds must have strictly positive area")
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        for obs in self.obstacles:
            inside = (
                obs.x0 >= self.bounds.x0
                and obs.x1 <= self.bounds.x1
                and obs.y0 >= self.bounds.y0
                and obs.y1 <= self.bounds.y1
            )
            if not inside:
                raise ConfigError(f"obstacle {obs} extends outside world bounds")

    def point_free(self, x: float, y: float) -> bool:
        """True iff the point lies inside bounds and outside every obstacle."""
        if not self.bounds.contains(x, y):
            return False
        return not any(obs.contains(x, y) for obs in self.obstacles)


@dataclass(frozen=True)
class RobotState:
    """Ground-truth robot pose; theta is kept normalized to (-pi, pi]."""

    x: float
    y: float
    theta: float
    footprint_radius: float = 0.18

    def __post_init__(self) -> None:
        if self.footprint_radius <= 0.0:
            raise ConfigError("footprint_radius must be > 0")
        object.__setattr__(self, "theta", _wrap(self.theta))


@dataclass(frozen=True)
class VelocityCommand:
    """Forward speed v (m/s) and yaw rate omega (rad/s)."""

    v: float
    omega: float


STOP = VelocityCommand(0.0, 0.0)


def step_robot(state: RobotState, cmd: VelocityCommand, dt: float) -> RobotState:
    """One explicit Euler step of the unicycle model.

    Clamping of the command to robot limits is the caller's job.
    """
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    return RobotState(
        x=state.x + cmd.v * math.cos(state.theta) * dt,
        y=state.y + cmd.v * math.sin(state.theta) * dt,
        theta=_wrap(state.theta + cmd.omega * dt),
        footprint_radius=state.footprint_radius,
    )


def check_collision(world: WorldMap, state: RobotState) -> bool:
    """True iff the robot disc touches an obstacle or pokes outside bounds.

    Obstacle contact is closed: a disc exactly tangent to an obstacle edge
    counts as a collision.  The disc must lie fully inside the bounds.
    """
    r = state.footprint_radius
    b = world.bounds
    inside = (
        state.x - r >= b.x0
        and state.x + r <= b.x1
        and state.y - r >= b.y0
        and state.y + r <= b.y1
    )
    if not inside:
        return True
    return any(obs.distance_to(state.x, state.y) <= r for obs in world.obstacles)


@dataclass(eq=False)
class OccupancyImage:
    """Per-camera view of the world: free[v, u] is True on drivable ground."""

    free: np.ndarray

    def __post_init__(self) -> None:
        self.free = np.asarray(self.free, dtype=bool)
        if self.free.ndim != 2:
            raise ConfigError("occupancy image must be a 2D grid")

    @property
    def height(self) -> int:
        return self.free.shape[0]

    @property
    def width(self) -> int:
        return self.free.shape[1]


def rasterize_view(world: WorldMap, camera: "CameraModel") -> OccupancyImage:
    """Project world occupancy into a camera image.

    A pixel is free iff its center back-projects (through the inverse
    homography) to a ground point inside the world bounds and outside every
    obstacle.  Pixels mapping to/behind the horizon are occupied.
    """
    h = np.asarray(camera.h, dtype=float)
    try:
        h_inv = np.linalg.inv(h)
    except np.linalg.LinAlgError as exc:
        raise ConfigError(f"camera {camera.cam_id!r} homography is not invertible") from exc

    us, vs = np.meshgrid(
        np.arange(camera.width, dtype=float),
        np.arange(camera.height, dtype=float),
    )
    ones = np.ones_like(us)
    pix = np.stack([us, vs, ones])  # (3, H, W)
    ground = np.tensordot(h_inv, pix, axes=1)
    w = ground[2]
    valid = np.abs(w) > EPS_W
    with np.errstate(divide="ignore", invalid="ignore"):
        gx = np.where(valid, ground[0] / w, np.nan)
        gy = np.where(valid, ground[1] / w, np.nan)

    b = world.bounds
    free = valid & (gx >= b.x0) & (gx <= b.x1) & (gy >= b.y0) & (gy <= b.y1)
    for obs in world.obstacles:
        free &= ~((gx >= obs.x0) & (gx <= obs.x1) & (gy >= obs.y0) & (gy <= obs.y1))
    return OccupancyImage(free)
