"""Closed-loop synthetic field: crop grid, vehicle, renderer, mission loop."""

from .world import CellState, CropCell, FieldWorld, make_world
from .vehicle import RobotPose, VehicleConfig, kinematics_step
from .render import CameraModel, RenderStyle, render
from .harvest import harvest_step
from .mission import MissionLoop, MissionReport, run_mission, default_start_pose

__all__ = [
    "CellState",
    "CropCell",
    "FieldWorld",
    "make_world",
    "RobotPose",
    "VehicleConfig",
    "kinematics_step",
    "CameraModel",
    "RenderStyle",
    "render",
    "harvest_step",
    "MissionLoop",
    "MissionReport",
    "run_mission",
    "default_start_pose",
]
