"""camrelay: deterministic simulator for calibration-less multi-camera
visual servoing with learned camera handover graphs."""

from .camera import CameraModel, Detection, DrivableMask, NoiseParams, detect, project, segment_drivable
from .control import PdParams, PdState, WalkParams, WalkState, low_level_command, pd_step, random_walk_command, wrap_angle
from .errors import ConfigError, FieldDomainError, OffMaskError, PlanningError, StageError
from .field import DistanceField, FieldParams, PotentialField, compute_potential, distance_transform, sample_gradient, with_border_obstacle
from .handover import CoDetectionLog, HandoverEdge, HandoverGraph, build_graph, log_codetections, run_exploration, select_handover, split_virtual_camera
from .plan import ExecParams, MissionOutcome, MissionStatus, TraversalPlan, TraversalTrace, astar, execute, make_plan
from .scenario import ScenarioConfig, Scene, build_scene, load_config, parse_config, stream
from .world import OccupancyImage, Rect, RobotState, VelocityCommand, WorldMap, check_collision, rasterize_view, step_robot

__version__ = "0.1.0"

__all__ = [
    "CameraModel", "Detection", "DrivableMask", "NoiseParams", "detect", "project", "segment_drivable",
    "PdParams", "PdState", "WalkParams", "WalkState", "low_level_command", "pd_step", "random_walk_command", "wrap_angle",
    "ConfigError", "FieldDomainError", "OffMaskError", "PlanningError", "StageError",
    "DistanceField", "FieldParams", "PotentialField", "compute_potential", "distance_transform", "sample_gradient", "with_border_obstacle",
    "CoDetectionLog", "HandoverEdge", "HandoverGraph", "build_graph", "log_codetections", "run_exploration", "select_handover", "split_virtual_camera",
    "ExecParams", "MissionOutcome", "MissionStatus", "TraversalPlan", "TraversalTrace", "astar", "execute", "make_plan",
    "ScenarioConfig", "Scene", "build_scene", "load_config", "parse_config", "stream",
    "OccupancyImage", "Rect", "RobotState", "VelocityCommand", "WorldMap", "check_collision", "rasterize_view", "step_robot",
    "__version__",
]
