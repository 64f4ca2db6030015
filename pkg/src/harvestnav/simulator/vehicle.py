"""Front-steered (bicycle) vehicle kinematics.

Pose is the rear-axle reference point. Heading is radians CCW from +x; a
positive steer command turns right, which decreases the heading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..navigation import SteeringCommand


@dataclass(frozen=True)
class VehicleConfig:
    wheelbase_m: float = 1.0
    max_speed_mps: float = 1.0
    max_steer_rad: float = math.radians(35.0)
    dt_s: float = 0.1

    def __post_init__(self):
        if min(self.wheelbase_m, self.max_speed_mps, self.max_steer_rad, self.dt_s) <= 0:
            raise ValueError("vehicle config values must be positive")


@dataclass(frozen=True)
class RobotPose:
    x: float
    y: float
    heading: float  # radians, CCW from +x
    steer_angle: float = 0.0

    def __post_init__(self):
        if abs(self.steer_angle) > math.pi / 2:
            raise ValueError("steer_angle out of range")

    def front_point(self, wheelbase_m: float) -> tuple:
        return (
            self.x + wheelbase_m * math.cos(self.heading),
            self.y + wheelbase_m * math.sin(self.heading),
        )


def kinematics_step(
    pose: RobotPose, cmd: SteeringCommand, dt: float, cfg: VehicleConfig
) -> RobotPose:
    """Euler step: advance along the current heading, then update heading
    from the steering geometry. Full-right steer (+1) decreases heading."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    steer_angle = cmd.steer * cfg.max_steer_rad
    speed = cmd.drive * cfg.max_speed_mps
    x = pose.x + speed * math.cos(pose.heading) * dt
    y = pose.y + speed * math.sin(pose.heading) * dt
    heading = pose.heading - (speed / cfg.wheelbase_m) * math.tan(steer_angle) * dt
    return RobotPose(x=x, y=y, heading=heading, steer_angle=steer_angle)
