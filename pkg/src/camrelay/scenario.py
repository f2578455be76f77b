"""Scenario configuration: the JSON document an operator writes to describe
an installation (world geometry, cameras, controller gains, exploration and
executor settings), its validation, and the builders that turn it into live
simulation objects.

Homographies are given numerically in the config; outside the world module
nothing ever interprets them geometrically, which is the point.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .camera import CameraModel, DrivableMask, NoiseParams, segment_drivable
from .control import PdParams, WalkParams
from .errors import ConfigError
from .field import DistanceField, FieldParams, distance_transform, with_border_obstacle
from .handover import ExplorationParams, HandoverEdge, split_virtual_camera
from .plan import CameraRig, ExecParams
from .world import OccupancyImage, Rect, RobotState, WorldMap, rasterize_view


def stream(seed: int, *names: object) -> np.random.Generator:
    """Named deterministic random stream.

    Derived by hashing (seed, names...), so adding a camera or stage never
    perturbs another stream's sequence.
    """
    key = "/".join([str(seed), *[str(n) for n in names]])
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "little"))


@dataclass(frozen=True)
class SplitSpec:
    """Virtual-camera split of one physical view: partition along a pixel
    axis plus the interface pixel joining the halves."""

    axis: str  # "u" or "v"
    at: int
    interface: tuple[int, int]
    names: tuple[str, str]


@dataclass(frozen=True)
class CameraSpec:
    cam_id: str
    width: int
    height: int
    homography: tuple[float, ...]  # 9 numbers, row-major
    seed_pixel: tuple[int, int]
    pd: PdParams
    field: FieldParams
    split: SplitSpec | None = None


@dataclass(frozen=True)
class RobotSpec:
    footprint_radius: float = 0.18
    v_max: float = 0.3
    omega_max: float = 1.5
    start: tuple[float, float, float] = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ScenarioConfig:
    seed: int
    dt: float
    world: WorldMap
    robot: RobotSpec
    cameras: tuple[CameraSpec, ...]
    noise: NoiseParams
    exploration: ExplorationParams
    executor: ExecParams
    n_min: int = 10


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


def parse_config(data: dict) -> ScenarioConfig:
    """Validate a raw config document and build the typed scenario."""
    try:
        world_raw = data["world"]
        bounds = Rect(*world_raw["bounds"])
        obstacles = tuple(Rect(*r) for r in world_raw.get("obstacles", []))
        world = WorldMap(bounds=bounds, obstacles=obstacles)

        robot_raw = data.get("robot", {})
        robot = RobotSpec(
            footprint_radius=float(robot_raw.get("footprint_radius", 0.18)),
            v_max=float(robot_raw.get("v_max", 0.3)),
            omega_max=float(robot_raw.get("omega_max", 1.5)),
            start=tuple(robot_raw.get("start", (0.0, 0.0, 0.0))),
        )

        noise_raw = data.get("noise", {})
        noise = NoiseParams(
            sigma_px=float(noise_raw.get("sigma_px", 0.0)),
            sigma_theta=float(noise_raw.get("sigma_theta", 0.0)),
        )

        dt = float(data.get("dt", 0.05))
        _require(dt > 0, "dt: must be > 0")
        seed = int(data.get("seed", 0))

        cameras = []
        for raw in data["cameras"]:
            cam_id = str(raw["id"])
            hom = tuple(float(x) for x in raw["homography"])
            _require(len(hom) == 9, f"cameras[{cam_id}].homography: expected 9 numbers")
            det_h = np.linalg.det(np.array(hom).reshape(3, 3))
            _require(abs(det_h) > 1e-12, f"cameras[{cam_id}].homography: not invertible")
            width, height = int(raw["width"]), int(raw["height"])
            _require(width > 0 and height > 0, f"cameras[{cam_id}]: image size must be positive")
            seed_px = tuple(int(x) for x in raw["seed_pixel"])
            _require(
                0 <= seed_px[0] < width and 0 <= seed_px[1] < height,
                f"cameras[{cam_id}].seed_pixel: outside the image",
            )
            pd_raw = raw.get("gains", {})
            pd = PdParams(
                kp=float(pd_raw.get("kp", 2.0)),
                kd=float(pd_raw.get("kd", 0.4)),
                v_const=float(pd_raw.get("v_const", 0.25)),
                omega_max=float(pd_raw.get("omega_max", 1.5)),
                dt=dt,
            )
            _require(pd.v_const <= robot.v_max, f"cameras[{cam_id}].gains.v_const: exceeds robot v_max")
            _require(pd.omega_max <= robot.omega_max, f"cameras[{cam_id}].gains.omega_max: exceeds robot omega_max")
            f_raw = raw.get("field", {})
            fparams = FieldParams(
                w_att=float(f_raw.get("w_att", 1.0)),
                w_rep=float(f_raw.get("w_rep", 5.0)),
                d0=float(f_raw.get("d0", 10.0)),
            )
            split = None
            if "split" in raw:
                s = raw["split"]
                axis = str(s["axis"])
                _require(axis in ("u", "v"), f"cameras[{cam_id}].split.axis: must be 'u' or 'v'")
                names = tuple(str(n) for n in s.get("names", (cam_id + "a", cam_id + "b")))
                _require(len(names) == 2, f"cameras[{cam_id}].split.names: expected two names")
                split = SplitSpec(
                    axis=axis,
                    at=int(s["at"]),
                    interface=tuple(int(x) for x in s["interface"]),
                    names=names,
                )
            cameras.append(
                CameraSpec(cam_id, width, height, hom, seed_px, pd, fparams, split)
            )
        ids = [c.cam_id for c in cameras]
        _require(len(set(ids)) == len(ids), "cameras: ids must be unique")
        _require(len(ids) > 0, "cameras: at least one camera required")

        exp_raw = data.get("exploration", {})
        exploration = ExplorationParams(
            ticks=int(exp_raw.get("ticks", 10_000)),
            walk=WalkParams(
                v_const=float(exp_raw.get("v_const", 0.3)),
                lookahead_px=float(exp_raw.get("lookahead_px", 8.0)),
                rotate_speed=float(exp_raw.get("rotate_speed", 1.2)),
                heading_tol=float(exp_raw.get("heading_tol", 0.12)),
            ),
            walk_margin_px=int(exp_raw.get("walk_margin_px", 4)),
        )
        _require(exploration.walk.v_const <= robot.v_max, "exploration.v_const: exceeds robot v_max")

        exe_raw = data.get("executor", {})
        executor = ExecParams(
            r_goal=float(exe_raw.get("r_goal", 5.0)),
            r_handover=float(exe_raw.get("r_handover", 10.0)),
            t_max=int(exe_raw.get("t_max", 3000)),
            grace_ticks=int(exe_raw.get("grace_ticks", 20)),
            r_orbit=float(exe_raw.get("r_orbit", 40.0)),
            t_orbit=int(exe_raw.get("t_orbit", 400)),
        )
        n_min = int(data.get("handover", {}).get("n_min", 10))
        _require(n_min >= 1, "handover.n_min: must be >= 1")
    except KeyError as exc:
        raise ConfigError(f"missing config field: {exc.args[0]}") from exc
    except (TypeError, IndexError) as exc:
        raise ConfigError(f"malformed config value: {exc}") from exc

    return ScenarioConfig(
        seed=seed,
        dt=dt,
        world=world,
        robot=robot,
        cameras=tuple(cameras),
        noise=noise,
        exploration=exploration,
        executor=executor,
        n_min=n_min,
    )


def load_config(path: str | Path) -> ScenarioConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    return parse_config(data)


@dataclass(eq=False)
class Scene:
    """Everything built from a config: world truth, segmented (and possibly
    split) cameras, per-camera control rigs, and any configured edges."""

    config: ScenarioConfig
    world: WorldMap
    physical_cameras: dict[str, CameraModel]
    views: dict[str, OccupancyImage]
    cameras: dict[str, CameraModel]
    rigs: dict[str, CameraRig]
    forced_edges: list[HandoverEdge]

    @property
    def masks(self) -> dict[str, DrivableMask]:
        return {cid: cam.mask for cid, cam in self.cameras.items()}

    @property
    def dists(self) -> dict[str, DistanceField]:
        return {cid: rig.dist for cid, rig in self.rigs.items()}

    def detect_streams(self, salt: object = "detect") -> dict[str, np.random.Generator]:
        return {cid: stream(self.config.seed, salt, cid) for cid in self.cameras}

    def start_state(self) -> RobotState:
        x, y, theta = self.config.robot.start
        return RobotState(x=x, y=y, theta=theta, footprint_radius=self.config.robot.footprint_radius)


def _split_partition(spec: SplitSpec, height: int, width: int) -> np.ndarray:
    grid = np.zeros((height, width), dtype=bool)
    if spec.axis == "u":
        grid[:, : spec.at + 1] = True
    else:
        grid[: spec.at + 1, :] = True
    return grid


def build_scene(
    config: ScenarioConfig,
    masks: dict[str, DrivableMask] | None = None,
) -> Scene:
    """Instantiate a scenario: render views, segment drivable regions (or
    reuse previously segmented masks keyed by physical camera id), apply
    virtual splits, and prepare per-camera control rigs."""
    world = config.world
    physical: dict[str, CameraModel] = {}
    views: dict[str, OccupancyImage] = {}
    final: dict[str, CameraModel] = {}
    rigs: dict[str, CameraRig] = {}
    forced: list[HandoverEdge] = []

    for spec in config.cameras:
        cam = CameraModel(spec.cam_id, spec.width, spec.height, np.array(spec.homography).reshape(3, 3))
        view = rasterize_view(world, cam)
        if masks is not None and spec.cam_id in masks:
            cam.mask = masks[spec.cam_id]
        else:
            cam.mask = segment_drivable(view, spec.seed_pixel)
        physical[spec.cam_id] = cam
        views[spec.cam_id] = view

        if spec.split is not None:
            partition = _split_partition(spec.split, spec.height, spec.width)
            cam_a, cam_b, (e_ab, e_ba) = split_virtual_camera(cam, partition, spec.split.interface, spec.split.names)
            members = [cam_a, cam_b]
            forced.extend([e_ab, e_ba])
        else:
            members = [cam]

        for member in members:
            final[member.cam_id] = member
            field_mask = with_border_obstacle(member.mask)
            rigs[member.cam_id] = CameraRig(
                camera=member,
                field_mask=field_mask,
                dist=distance_transform(field_mask),
                field_params=spec.field,
                pd=spec.pd,
            )

    return Scene(
        config=config,
        world=world,
        physical_cameras=physical,
        views=views,
        cameras=final,
        rigs=rigs,
        forced_edges=forced,
    )
