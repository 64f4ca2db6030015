"""The full perceive -> steer -> act loop against the synthetic field.

Each step renders the camera view, reduces it to navigation signals, runs
the controller on a GPS-noised pose, advances the vehicle, and cuts crop
under the swath. Everything is seeded, so a mission replays bit-identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..navigation import NavMode, NavState, distance_outside_fence, nav_step
from ..perception import analyze_frame_full
from .harvest import harvest_step
from .render import render
from .vehicle import RobotPose, kinematics_step
from .world import CellState, FieldWorld

_GPS_STREAM_TAG = 0x475053


@dataclass
class MissionReport:
    coverage_fraction: float
    steps_used: int
    fence_breaches: int
    trajectory: list
    reached_done: bool
    turn_events: list = field(default_factory=list)
    seed: int = 0

    def to_json_dict(self) -> dict:
        return {
            "coverage_fraction": self.coverage_fraction,
            "steps_used": self.steps_used,
            "fence_breaches": self.fence_breaches,
            "reached_done": self.reached_done,
            "seed": self.seed,
            "turn_events": self.turn_events,
            "trajectory": self.trajectory,
        }


def default_start_pose(world: FieldWorld, bundle) -> RobotPose:
    """Lower-right corner of the field, facing along the bottom edge, so the
    right-turn-only policy spirals inward."""
    w, _ = world.extent
    return RobotPose(x=w - 0.6, y=1.0, heading=math.pi)


class MissionLoop:
    """Stepwise closed loop; the tuning service drives this interactively."""

    def __init__(self, world: FieldWorld, pose: RobotPose, bundle):
        self.world = world
        self.pose = pose
        self.nav_state = NavState()
        self.fence = bundle.fence_for_world(world)
        self.initial_uncut = world.count_state(CellState.UNCUT)
        self.steps_used = 0
        self.fence_breaches = 0
        self.trajectory: list = []
        self.turn_events: list = []
        self.last_render = None
        self.last_frame = None
        self._gps_rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([world.rng_seed, _GPS_STREAM_TAG]))
        )

    @property
    def done(self) -> bool:
        return self.nav_state.mode == NavMode.DONE

    def coverage_fraction(self) -> float:
        if self.initial_uncut == 0:
            return 1.0
        remaining = self.world.count_state(CellState.UNCUT)
        return (self.initial_uncut - remaining) / self.initial_uncut

    def step(self, bundle):
        """One full loop iteration under the given (possibly edited) params."""
        img = render(self.world, self.pose, bundle.camera, bundle.style)
        frame, _, _ = analyze_frame_full(
            img, bundle.segmentation, bundle.detection, bundle.eof
        )
        self.last_render = img
        self.last_frame = frame

        noise = self._gps_rng.normal(0.0, self.fence.gps_noise_sigma_m, size=2)
        gps_pose = RobotPose(
            x=self.pose.x + noise[0],
            y=self.pose.y + noise[1],
            heading=self.pose.heading,
            steer_angle=self.pose.steer_angle,
        )
        if distance_outside_fence((gps_pose.x, gps_pose.y), self.fence) > (
            3 * self.fence.gps_noise_sigma_m
        ):
            self.fence_breaches += 1

        prev_mode = self.nav_state.mode
        self.nav_state, cmd = nav_step(self.nav_state, frame, gps_pose, self.fence, bundle.nav)
        if prev_mode != NavMode.TURNING and self.nav_state.mode == NavMode.TURNING:
            self.turn_events.append(
                {
                    "step": self.steps_used,
                    "heading_before": self.pose.heading,
                    "turn_target_heading": self.nav_state.turn_target_heading,
                }
            )

        self.trajectory.append([self.pose.x, self.pose.y, self.pose.heading])
        self.pose = kinematics_step(self.pose, cmd, bundle.vehicle.dt_s, bundle.vehicle)
        self.world = harvest_step(
            self.world,
            self.pose,
            bundle.doc["cutter_width_m"],
            front_offset_m=bundle.vehicle.wheelbase_m,
            swath_depth_m=bundle.doc["cutter_reach_m"],
        )
        self.steps_used += 1
        return img, frame, cmd

    def report(self) -> MissionReport:
        return MissionReport(
            coverage_fraction=self.coverage_fraction(),
            steps_used=self.steps_used,
            fence_breaches=self.fence_breaches,
            trajectory=[list(p) for p in self.trajectory],
            reached_done=self.done,
            turn_events=list(self.turn_events),
            seed=self.world.rng_seed,
        )


def run_mission(
    world: FieldWorld,
    start_pose: RobotPose,
    bundle,
    max_steps: int,
    frame_sink=None,
) -> MissionReport:
    """Run the loop until DONE or max_steps. ``frame_sink(step, img)`` may be
    given to dump per-step renders."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    loop = MissionLoop(world, start_pose, bundle)
    for _ in range(max_steps):
        img, _, _ = loop.step(bundle)
        if frame_sink is not None:
            frame_sink(loop.steps_used - 1, img)
        if loop.done:
            break
    return loop.report()
