import math

import pytest

from harvestnav.navigation import SteeringCommand
from harvestnav.simulator.vehicle import RobotPose, VehicleConfig, kinematics_step

CFG = VehicleConfig(wheelbase_m=1.0, max_speed_mps=1.0, max_steer_rad=math.radians(30), dt_s=0.1)


def test_straight_motion():
    pose = RobotPose(0.0, 0.0, 0.0)
    out = kinematics_step(pose, SteeringCommand(0.0, 1.0), 1.0, CFG)
    assert out.x == pytest.approx(1.0)
    assert out.y == pytest.approx(0.0)
    assert out.heading == 0.0


def test_zero_command_no_motion():
    pose = RobotPose(3.0, 4.0, 1.2)
    out = kinematics_step(pose, SteeringCommand(0.0, 0.0), 0.5, CFG)
    assert (out.x, out.y, out.heading) == (3.0, 4.0, 1.2)


def test_full_right_heading_strictly_decreases():
    pose = RobotPose(0.0, 0.0, 0.0)
    prev = pose.heading
    for _ in range(10):
        pose = kinematics_step(pose, SteeringCommand(1.0, 0.7), 0.1, CFG)
        assert pose.heading < prev
        prev = pose.heading


def test_left_increases_heading():
    pose = RobotPose(0.0, 0.0, 0.0)
    out = kinematics_step(pose, SteeringCommand(-1.0, 0.5), 0.1, CFG)
    assert out.heading > 0.0


def test_displacement_bounded_by_speed():
    pose = RobotPose(0.0, 0.0, 0.7)
    for _ in range(20):
        new = kinematics_step(pose, SteeringCommand(0.3, 1.0), 0.1, CFG)
        d = math.hypot(new.x - pose.x, new.y - pose.y)
        assert d <= CFG.max_speed_mps * 0.1 + 1e-12
        pose = new


def test_steer_angle_recorded_and_bounded():
    pose = RobotPose(0.0, 0.0, 0.0)
    out = kinematics_step(pose, SteeringCommand(0.5, 1.0), 0.1, CFG)
    assert out.steer_angle == pytest.approx(0.5 * CFG.max_steer_rad)


def test_bad_dt():
    with pytest.raises(ValueError):
        kinematics_step(RobotPose(0, 0, 0), SteeringCommand(0, 0), 0.0, CFG)


def test_config_validation():
    with pytest.raises(ValueError):
        VehicleConfig(wheelbase_m=0.0)
