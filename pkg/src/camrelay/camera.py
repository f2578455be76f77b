"""Viewpoint model.

A camera is an image size plus a ground-plane homography.  The homography is
simulation-side ground truth used to render views and synthesize detections;
control-side code only ever consumes pixels, never the matrix itself.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, StageError
from .world import EPS_W, OccupancyImage, RobotState, _wrap

# World-space probe distance (m) used to measure image-space heading.
HEADING_PROBE_M = 0.05


def cell_of(u: float, v: float) -> tuple[int, int]:
    """Integer cell containing a subpixel position (half-up rounding)."""
    return int(math.floor(u + 0.5)), int(math.floor(v + 0.5))


@dataclass(eq=False)
class DrivableMask:
    """Boolean grid of floor the robot may occupy; cells[v, u] True = drivable."""

    cells: np.ndarray

    def __post_init__(self) -> None:
        self.cells = np.asarray(self.cells, dtype=bool)
        if self.cells.ndim != 2:
            raise ConfigError("mask must be a 2D grid")

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    def contains(self, u: float, v: float) -> bool:
        """True iff (u, v) falls on a drivable cell."""
        cu, cv = cell_of(u, v)
        if not (0 <= cu < self.width and 0 <= cv < self.height):
            return False
        return bool(self.cells[cv, cu])


@dataclass(eq=False)
class CameraModel:
    """A viewpoint: image size, world-to-image homography, optional mask."""

    cam_id: str
    width: int
    height: int
    h: np.ndarray
    mask: DrivableMask | None = None

    def __post_init__(self) -> None:
        self.h = np.asarray(self.h, dtype=float).reshape(3, 3)
        if self.width <= 0 or self.height <= 0:
            raise ConfigError(f"camera {self.cam_id!r} needs positive image size")
        if abs(np.linalg.det(self.h)) < 1e-12:
            raise ConfigError(f"camera {self.cam_id!r} homography is singular")
        if self.mask is not None and (
            self.mask.height != self.height or self.mask.width != self.width
        ):
            raise ConfigError(f"camera {self.cam_id!r} mask size differs from image size")


@dataclass(frozen=True)
class Detection:
    """What the control side is allowed to see: a pixel center and an
    image-space heading (atan2 of dv, du with u rightward, v downward)."""

    camera_id: str
    center: tuple[float, float]
    heading: float
    tick: int = 0


@dataclass(frozen=True)
class NoiseParams:
    """Detector jitter: pixel noise on the center, angular noise on heading."""

    sigma_px: float = 1.0
    sigma_theta: float = 0.05


ZERO_NOISE = NoiseParams(0.0, 0.0)


def _project_raw(h: np.ndarray, x: float, y: float) -> tuple[float, float] | None:
    """Homogeneous map + perspective divide, no in-frame check."""
    w = h[2, 0] * x + h[2, 1] * y + h[2, 2]
    if w <= EPS_W:
        return None
    u = (h[0, 0] * x + h[0, 1] * y + h[0, 2]) / w
    v = (h[1, 0] * x + h[1, 1] * y + h[1, 2]) / w
    return u, v


def project(camera: CameraModel, point: tuple[float, float]) -> tuple[float, float] | None:
    """Project a world ground point to image pixels.

    Returns None for points at/behind the horizon or outside the image.
    """
    uv = _project_raw(camera.h, point[0], point[1])
    if uv is None:
        return None
    u, v = uv
    if not (0.0 <= u <= camera.width - 1 and 0.0 <= v <= camera.height - 1):
        return None
    return u, v


def detect(
    camera: CameraModel,
    state: RobotState,
    noise: NoiseParams,
    rng: np.random.Generator,
    tick: int = 0,
) -> Detection | None:
    """Simulate the per-camera robot detector.

    Visibility is decided on the noiseless projected center: it must be in
    frame and on a drivable mask cell.  The reported center and heading then
    get Gaussian jitter.  Heading is measured by projecting a point a short
    distance ahead of the robot and taking the image-space direction to it.
    """
    if camera.mask is None:
        raise ConfigError(f"camera {camera.cam_id!r} has no drivable mask")
    center = project(camera, (state.x, state.y))
    if center is None or not camera.mask.contains(*center):
        return None

    ahead = (
        state.x + HEADING_PROBE_M * math.cos(state.theta),
        state.y + HEADING_PROBE_M * math.sin(state.theta),
    )
    probe = _project_raw(camera.h, *ahead)
    if probe is None:
        return None
    heading = math.atan2(probe[1] - center[1], probe[0] - center[0])

    du, dv = rng.normal(0.0, noise.sigma_px, size=2)
    dth = rng.normal(0.0, noise.sigma_theta)
    u = float(np.clip(center[0] + du, 0.0, camera.width - 1))
    v = float(np.clip(center[1] + dv, 0.0, camera.height - 1))
    return Detection(
        camera_id=camera.cam_id,
        center=(u, v),
        heading=_wrap(heading + dth),
        tick=tick,
    )


def segment_drivable(image: OccupancyImage, seed: tuple[int, int]) -> DrivableMask:
    """One-click drivable-region segmentation.

    The mask is the 4-connected component of free pixels containing the seed;
    everything else is non-drivable.  4-connectivity stops the region leaking
    diagonally through wall corners.
    """
    su, sv = int(seed[0]), int(seed[1])
    if not (0 <= su < image.width and 0 <= sv < image.height):
        raise StageError(f"seed pixel {seed} is outside the image")
    if not image.free[sv, su]:
        raise StageError(f"seed pixel {seed} lies on an occupied pixel")

    free = image.free
    cells = np.zeros_like(free)
    queue: deque[tuple[int, int]] = deque([(su, sv)])
    cells[sv, su] = True
    width, height = image.width, image.height
    while queue:
        u, v = queue.popleft()
        for nu, nv in ((u + 1, v), (u - 1, v), (u, v + 1), (u, v - 1)):
            if 0 <= nu < width and 0 <= nv < height and free[nv, nu] and not cells[nv, nu]:
                cells[nv, nu] = True
                queue.append((nu, nv))
    return DrivableMask(cells)
