"""Per-camera numerical core: exact Euclidean distance transform of the
drivable mask and the navigation potential built on top of it.

Distances are in pixels throughout; the control loop never sees metric units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .camera import DrivableMask
from .errors import ConfigError, FieldDomainError


@dataclass(eq=False)
class DistanceField:
    """d[v, u]: exact Euclidean distance (pixels) to the nearest non-drivable
    pixel center; 0 exactly on non-drivable pixels."""

    d: np.ndarray

    @property
    def height(self) -> int:
        return self.d.shape[0]

    @property
    def width(self) -> int:
        return self.d.shape[1]

    def at(self, u: float, v: float) -> float:
        """Clearance at a subpixel position (nearest-cell lookup)."""
        cu = int(math.floor(u + 0.5))
        cv = int(math.floor(v + 0.5))
        if not (0 <= cu < self.width and 0 <= cv < self.height):
            return 0.0
        return float(self.d[cv, cu])


@dataclass(frozen=True)
class FieldParams:
    """Weights of the navigation cost: goal attraction, obstacle repulsion,
    and the clearance d0 beyond which obstacles exert no influence."""

    w_att: float = 1.0
    w_rep: float = 5.0
    d0: float = 10.0

    def __post_init__(self) -> None:
        if self.w_att < 0.0 or self.w_rep < 0.0 or self.d0 <= 0.0:
            raise ConfigError("field params need w_att >= 0, w_rep >= 0, d0 > 0")


@dataclass(eq=False)
class PotentialField:
    """u[v, u]: scalar navigation cost, +inf off the drivable region."""

    u: np.ndarray
    goal: tuple[float, float]
    params: FieldParams

    @property
    def height(self) -> int:
        return self.u.shape[0]

    @property
    def width(self) -> int:
        return self.u.shape[1]


def _lower_envelope(f: np.ndarray) -> np.ndarray:
    """1D squared-distance transform: min_j (q - j)^2 + f[j] for every q.

    Lower envelope of parabolas; exact for integer-valued f.
    """
    n = f.shape[0]
    v = np.zeros(n, dtype=np.intp)  # parabola apex indices
    z = np.empty(n + 1)  # envelope breakpoints
    z[0] = -np.inf
    z[1] = np.inf
    k = 0
    for q in range(1, n):
        s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2 * q - 2 * v[k])
        while s <= z[k]:
            k -= 1
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2 * q - 2 * v[k])
        k += 1
        v[k] = q
        z[k] = s
        z[k + 1] = np.inf
    out = np.empty(n)
    k = 0
    for q in range(n):
        while z[k + 1] < q:
            k += 1
        out[q] = (q - v[k]) ** 2 + f[v[k]]
    return out


def distance_transform(mask: DrivableMask) -> DistanceField:
    """Exact Euclidean distance to the nearest non-drivable pixel center.

    Two-pass algorithm: a vertical sweep for per-column obstacle distances,
    then a per-row lower envelope over squared distances.  All intermediate
    values are integers, so the result equals the brute-force minimum
    bit-for-bit.
    """
    occupied = ~mask.cells
    if not occupied.any():
        raise ValueError("mask has no non-drivable pixel; distance is unbounded")
    h, w = occupied.shape
    cap = float(h + w + 1)  # beyond any in-grid distance

    g = np.full((h, w), cap)
    g[occupied] = 0.0
    for row in range(1, h):
        np.minimum(g[row], g[row - 1] + 1.0, out=g[row])
    for row in range(h - 2, -1, -1):
        np.minimum(g[row], g[row + 1] + 1.0, out=g[row])

    f = g * g
    d2 = np.empty((h, w))
    for row in range(h):
        d2[row] = _lower_envelope(f[row])
    return DistanceField(np.sqrt(d2))


def with_border_obstacle(mask: DrivableMask) -> DrivableMask:
    """Copy of the mask with the one-pixel image border forced non-drivable.

    Used when preparing control fields: the frame edge acts as an obstacle,
    which keeps the robot in view and guarantees the distance transform is
    well defined.
    """
    cells = mask.cells.copy()
    cells[0, :] = False
    cells[-1, :] = False
    cells[:, 0] = False
    cells[:, -1] = False
    return DrivableMask(cells)


def compute_potential(
    mask: DrivableMask,
    dist: DistanceField,
    goal: tuple[float, float],
    params: FieldParams,
) -> PotentialField:
    """Navigation cost per pixel.

    Attraction grows with the square root of the pixel distance to the goal;
    repulsion is w_rep * (1/d - 1/d0) inside the influence radius d0 and zero
    beyond it, which makes the cost continuous at the cutoff.  Non-drivable
    pixels (and d == 0 pixels) carry an infinite sentinel.
    """
    if mask.cells.shape != dist.d.shape:
        raise ConfigError("mask and distance field sizes differ")
    gu, gv = goal
    if not mask.contains(gu, gv):
        raise ConfigError(f"goal pixel {goal} is not on the drivable mask")

    us = np.arange(mask.width, dtype=float)
    vs = np.arange(mask.height, dtype=float)
    du = us[np.newaxis, :] - gu
    dv = vs[:, np.newaxis] - gv
    r = np.sqrt(du * du + dv * dv)  # pixel distance to goal
    attract = params.w_att * np.sqrt(r)

    d = dist.d
    valid = mask.cells & (d > 0.0)
    repulse = np.zeros_like(d)
    inside = valid & (d <= params.d0)
    repulse[inside] = params.w_rep * (1.0 / d[inside] - 1.0 / params.d0)

    u = np.full(d.shape, np.inf)
    u[valid] = attract[valid] + repulse[valid]
    return PotentialField(u=u, goal=(float(gu), float(gv)), params=params)


def sample_gradient(field: PotentialField, pos: tuple[float, float]) -> tuple[float, float]:
    """Gradient of the potential at a subpixel position.

    Central differences at the four surrounding integer pixels, bilinearly
    interpolated.  Raises FieldDomainError when the stencil leaves the image
    or touches an infinite cell (the position is off the drivable region).
    """
    u, v = pos
    i0 = math.floor(u)
    j0 = math.floor(v)
    if i0 - 1 < 0 or i0 + 2 > field.width - 1 or j0 - 1 < 0 or j0 + 2 > field.height - 1:
        raise FieldDomainError(f"gradient undefined at {pos}: stencil leaves the image")

    patch = field.u[j0 - 1 : j0 + 3, i0 - 1 : i0 + 3]
    if not np.isfinite(patch).all():
        raise FieldDomainError(f"gradient undefined at {pos}: off the drivable region")

    # central differences at the 4 corners (local coords 1..2 inside patch)
    gu = (patch[1:3, 2:4] - patch[1:3, 0:2]) / 2.0
    gv = (patch[2:4, 1:3] - patch[0:2, 1:3]) / 2.0

    fu = u - i0
    fv = v - j0
    w00 = (1.0 - fu) * (1.0 - fv)
    w10 = fu * (1.0 - fv)
    w01 = (1.0 - fu) * fv
    w11 = fu * fv
    grad_u = w00 * gu[0, 0] + w10 * gu[0, 1] + w01 * gu[1, 0] + w11 * gu[1, 1]
    grad_v = w00 * gv[0, 0] + w10 * gv[0, 1] + w01 * gv[1, 0] + w11 * gv[1, 1]
    return float(grad_u), float(grad_v)
