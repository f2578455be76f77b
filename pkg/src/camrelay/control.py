"""Image-space controllers.

Two of them: the PD low-level controller that steers the robot down the
potential-field gradient at constant forward speed, and the random-walk
controller used while learning camera overlaps (drive straight, rotate to a
random heading at the region boundary).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .camera import Detection, DrivableMask
from .errors import OffMaskError
from .field import PotentialField, sample_gradient
from .world import TWO_PI, VelocityCommand

# Gradient norms below this are treated as a flat field (hold heading).
EPS_GRADIENT = 1e-9


def wrap_angle(a: float) -> float:
    """Normalize an angle to (-pi, pi]."""
    if -math.pi < a <= math.pi:
        return a
    return math.pi - (math.pi - a) % TWO_PI


@dataclass(frozen=True)
class PdParams:
    """PD gains, constant forward speed, yaw-rate clamp, control period."""

    kp: float = 2.0
    kd: float = 0.4
    v_const: float = 0.25
    omega_max: float = 1.5
    dt: float = 0.05

    def __post_init__(self) -> None:
        if self.kp < 0 or self.kd < 0:
            raise ValueError("gains must be non-negative")
        if self.v_const <= 0 or self.omega_max <= 0 or self.dt <= 0:
            raise ValueError("v_const, omega_max, dt must be > 0")


@dataclass(frozen=True)
class PdState:
    """Derivative memory of the PD controller."""

    prev_error: float = 0.0
    initialized: bool = False


def pd_step(state: PdState, error: float, params: PdParams) -> tuple[float, PdState]:
    """One PD update on a heading error; derivative term is zero on the
    first call.  Returns the clamped yaw rate and the new state."""
    derivative = 0.0
    if state.initialized:
        derivative = (error - state.prev_error) / params.dt
    omega = params.kp * error + params.kd * derivative
    omega = max(-params.omega_max, min(params.omega_max, omega))
    return omega, PdState(prev_error=error, initialized=True)


def low_level_command(
    field: PotentialField,
    det: Detection,
    pd: PdParams,
    state: PdState,
) -> tuple[VelocityCommand, PdState]:
    """Steer toward the steepest descent of the potential at the detection.

    Forward speed is constant; the PD controller turns the measured heading
    toward the descent direction.  A (near-)flat gradient holds the current
    heading rather than stopping.
    """
    gu, gv = sample_gradient(field, det.center)
    norm = math.hypot(gu, gv)
    if norm < EPS_GRADIENT:
        error = 0.0
    else:
        desired = math.atan2(-gv, -gu)
        error = wrap_angle(desired - det.heading)
    omega, new_state = pd_step(state, error, pd)
    return VelocityCommand(v=pd.v_const, omega=omega), new_state


@dataclass(frozen=True)
class WalkParams:
    """Random-walk tuning: straight speed, lookahead, rotation behavior."""

    v_const: float = 0.3
    lookahead_px: float = 8.0
    rotate_speed: float = 1.2
    heading_tol: float = 0.12
    max_redraws: int = 8


@dataclass
class WalkState:
    """Mutable state machine: straight until the lookahead probe leaves the
    mask, then rotate to a randomly drawn target heading."""

    rotating: bool = False
    target: float = 0.0
    redraws: int = 0

    def reset(self) -> None:
        self.rotating = False
        self.target = 0.0
        self.redraws = 0


def _probe_on_mask(mask: DrivableMask, center: tuple[float, float], heading: float, lookahead: float) -> bool:
    pu = center[0] + lookahead * math.cos(heading)
    pv = center[1] + lookahead * math.sin(heading)
    return mask.contains(pu, pv)


def random_walk_command(
    mask: DrivableMask,
    det: Detection,
    params: WalkParams,
    state: WalkState,
    rng: np.random.Generator,
) -> VelocityCommand:
    """Boundary-bouncing exploration.

    Drives straight while the lookahead probe stays on the mask; otherwise
    rotates in place toward a uniformly drawn target heading, redrawing (up
    to max_redraws, then reversing) until the post-rotation probe is clear.
    """
    if not mask.contains(*det.center):
        raise OffMaskError(f"detection {det.center} is off the drivable mask")

    if not state.rotating:
        if _probe_on_mask(mask, det.center, det.heading, params.lookahead_px):
            return VelocityCommand(v=params.v_const, omega=0.0)
        state.rotating = True
        state.target = wrap_angle(rng.uniform(-math.pi, math.pi))
        state.redraws = 0

    err = wrap_angle(state.target - det.heading)
    if abs(err) < params.heading_tol:
        if _probe_on_mask(mask, det.center, det.heading, params.lookahead_px):
            state.reset()
            return VelocityCommand(v=params.v_const, omega=0.0)
        if state.redraws < params.max_redraws:
            state.target = wrap_angle(rng.uniform(-math.pi, math.pi))
            state.redraws += 1
        else:
            state.target = wrap_angle(det.heading + math.pi)
        err = wrap_angle(state.target - det.heading)

    omega = params.rotate_speed if err >= 0.0 else -params.rotate_speed
    return VelocityCommand(v=0.0, omega=omega)
