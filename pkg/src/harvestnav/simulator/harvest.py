"""Cutting model: uncut cells inside the front swath become residual stubble."""

from __future__ import annotations

import math
from dataclasses import replace

from .vehicle import RobotPose
from .world import CellState, FieldWorld


def harvest_step(
    world: FieldWorld,
    pose: RobotPose,
    cutter_width_m: float,
    *,
    front_offset_m: float = 1.0,
    swath_depth_m: float = 0.6,
) -> FieldWorld:
    """Cut UNCUT cells whose centers fall inside the cutter swath.

    The swath is a rectangle of cutter_width_m (lateral) by swath_depth_m
    (along heading) extending forward from the front edge of the vehicle
    (front_offset_m ahead of the pose reference). Pure: returns a new world.
    """
    if cutter_width_m <= 0:
        raise ValueError("cutter_width_m must be positive")

    cos_h, sin_h = math.cos(pose.heading), math.sin(pose.heading)
    s = world.cell_size_m
    half_w = cutter_width_m / 2.0

    # bounding box of the swath in world coordinates
    reach = front_offset_m + swath_depth_m + half_w
    i_lo = max(0, int(math.floor((pose.x - reach) / s)))
    i_hi = min(world.cols - 1, int(math.ceil((pose.x + reach) / s)))
    j_lo = max(0, int(math.floor((pose.y - reach) / s)))
    j_hi = min(world.rows - 1, int(math.ceil((pose.y + reach) / s)))

    new_state = None
    new_height = None
    for j in range(j_lo, j_hi + 1):
        for i in range(i_lo, i_hi + 1):
            if world.state[j, i] != CellState.UNCUT:
                continue
            dx = (i + 0.5) * s - pose.x
            dy = (j + 0.5) * s - pose.y
            along = dx * cos_h + dy * sin_h
            lateral = dx * sin_h - dy * cos_h
            if front_offset_m <= along <= front_offset_m + swath_depth_m and abs(lateral) <= half_w:
                if new_state is None:
                    new_state = world.state.copy()
                    new_height = world.height_m.copy()
                new_state[j, i] = int(CellState.RESIDUAL)
                new_height[j, i] = world.residual_height_m

    if new_state is None:
        return world
    return replace(world, state=new_state, height_m=new_height)
