"""Closed-loop controller: centroid steering, right-turn coverage, geofence.

The controller is a pure state machine. While TRACKING it steers
proportionally to the horizontal offset of the crop centroid from the image
center; when the end-of-field flag persists for a debounce window it starts
a fixed 90-degree right turn, and when a completed turn is immediately
followed by an end-of-field frame with almost no crop the mission is DONE.
A noisy GPS fix falling outside the geofence by more than three sigma is a
fail-safe stop from any mode.

Headings are radians, counterclockwise positive; a right turn decreases the
heading by pi/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .perception import PerceptionFrame

#: Fixed turn command of the coverage policy: 90 degrees to the right.
TURN_ANGLE_RAD = -math.pi / 2


class NavMode(str, Enum):
    TRACKING = "TRACKING"
    TURNING = "TURNING"
    DONE = "DONE"


@dataclass(frozen=True)
class SteeringCommand:
    steer: float  # [-1, +1], negative = left
    drive: float  # [0, 1] forward speed fraction

    def __post_init__(self):
        if not -1.0 <= self.steer <= 1.0:
            raise ValueError("steer must be within [-1, 1]")
        if not 0.0 <= self.drive <= 1.0:
            raise ValueError("drive must be within [0, 1]")


STOP = SteeringCommand(0.0, 0.0)


@dataclass(frozen=True)
class NavState:
    mode: NavMode = NavMode.TRACKING
    turn_target_heading: float | None = None
    passes_completed: int = 0
    eof_debounce: int = 0
    post_turn_check: bool = False  # next TRACKING frame decides completion
    crop_ever_seen: bool = False  # distinguishes an empty world from a pass end


@dataclass(frozen=True)
class GeoFence:
    """Axis-aligned rectangular boundary in field coordinates (meters)."""

    corners: tuple  # 4 (x, y) points
    gps_noise_sigma_m: float = 0.5

    def __post_init__(self):
        if len(self.corners) != 4:
            raise ValueError("fence needs exactly 4 corners")
        xs = sorted(set(float(x) for x, _ in self.corners))
        ys = sorted(set(float(y) for _, y in self.corners))
        if len(xs) != 2 or len(ys) != 2:
            raise ValueError("corners must form an axis-aligned rectangle")
        got = {(float(x), float(y)) for x, y in self.corners}
        want = {(xs[0], ys[0]), (xs[0], ys[1]), (xs[1], ys[0]), (xs[1], ys[1])}
        if got != want:
            raise ValueError("corners must be the 4 distinct rectangle corners")
        if not 0.5 <= self.gps_noise_sigma_m <= 1.0:
            raise ValueError("gps_noise_sigma_m must lie in [0.5, 1.0]")

    @property
    def bounds(self) -> tuple:
        xs = [x for x, _ in self.corners]
        ys = [y for _, y in self.corners]
        return (min(xs), min(ys), max(xs), max(ys))


@dataclass(frozen=True)
class NavParams:
    steer_gain: float = 0.002  # steer units per pixel of centroid error
    cruise_drive: float = 0.8
    turn_drive: float = 0.5
    eof_debounce_frames: int = 3
    done_crop_fraction: float = 0.02
    heading_tolerance_deg: float = 2.0

    def __post_init__(self):
        if self.steer_gain <= 0:
            raise ValueError("steer_gain must be > 0")
        for name in ("cruise_drive", "turn_drive"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise ValueError(f"{name} must be in (0, 1]")
        if self.eof_debounce_frames < 1:
            raise ValueError("eof_debounce_frames must be >= 1")
        if not 0 <= self.done_crop_fraction <= 1:
            raise ValueError("done_crop_fraction must be in [0, 1]")
        if self.heading_tolerance_deg <= 0:
            raise ValueError("heading_tolerance_deg must be > 0")


def inside_fence(point: tuple, fence: GeoFence) -> bool:
    """Axis-aligned containment, boundary inclusive."""
    x, y = point
    xmin, ymin, xmax, ymax = fence.bounds
    return xmin <= x <= xmax and ymin <= y <= ymax


def distance_outside_fence(point: tuple, fence: GeoFence) -> float:
    """Euclidean distance from the point to the fence rectangle (0 inside)."""
    x, y = point
    xmin, ymin, xmax, ymax = fence.bounds
    dx = max(xmin - x, 0.0, x - xmax)
    dy = max(ymin - y, 0.0, y - ymax)
    return math.hypot(dx, dy)


def centroid_error_to_steer(error_px: float, gain: float) -> float:
    """Unclamped proportional steer for a centroid offset in pixels."""
    return gain * error_px


def steering_from_centroid(
    centroid_col: float | None, image_width: int, params: NavParams
) -> SteeringCommand:
    """Proportional steering toward the crop centroid; full stop when no crop."""
    if image_width < 1:
        raise ValueError("image_width must be >= 1")
    if centroid_col is None:
        return STOP
    raw = centroid_error_to_steer(centroid_col - image_width / 2, params.steer_gain)
    return SteeringCommand(max(-1.0, min(1.0, raw)), params.cruise_drive)


def wrap_angle(a: float) -> float:
    """Wrap to (-pi, pi]."""
    w = math.fmod(a + math.pi, 2 * math.pi)
    if w <= 0:
        w += 2 * math.pi
    return w - math.pi


def nav_step(
    state: NavState,
    frame: PerceptionFrame,
    pose,
    fence: GeoFence,
    params: NavParams,
):
    """One controller update. ``pose`` carries the GPS-reported position and
    the vehicle heading. Returns (new_state, SteeringCommand)."""
    if state.mode == NavMode.DONE:
        return state, STOP

    if frame.crop_fraction > 0.0 and not state.crop_ever_seen:
        state = replace(state, crop_ever_seen=True)

    if distance_outside_fence((pose.x, pose.y), fence) > 3 * fence.gps_noise_sigma_m:
        return replace(state, mode=NavMode.DONE, turn_target_heading=None), STOP

    if state.mode == NavMode.TURNING:
        err = wrap_angle(pose.heading - state.turn_target_heading)
        if abs(err) <= math.radians(params.heading_tolerance_deg):
            state = replace(
                state,
                mode=NavMode.TRACKING,
                turn_target_heading=None,
                eof_debounce=0,
                post_turn_check=True,
            )
            return state, _tracking_command(frame, params)
        return state, SteeringCommand(1.0, params.turn_drive)

    # TRACKING
    if (
        state.post_turn_check
        and frame.end_of_field
        and frame.crop_fraction < params.done_crop_fraction
    ):
        return replace(state, mode=NavMode.DONE, post_turn_check=False), STOP

    debounce = state.eof_debounce + 1 if frame.end_of_field else 0
    if debounce >= params.eof_debounce_frames:
        if frame.crop_fraction == 0.0 and not state.crop_ever_seen:
            # nothing to harvest was ever visible: stop instead of turning
            return replace(state, mode=NavMode.DONE, post_turn_check=False), STOP
        state = replace(
            state,
            mode=NavMode.TURNING,
            turn_target_heading=wrap_angle(pose.heading + TURN_ANGLE_RAD),
            passes_completed=state.passes_completed + 1,
            eof_debounce=0,
            post_turn_check=False,
        )
        return state, _tracking_command(frame, params)

    state = replace(state, eof_debounce=debounce, post_turn_check=False)
    return state, _tracking_command(frame, params)


def _tracking_command(frame: PerceptionFrame, params: NavParams) -> SteeringCommand:
    col = None if frame.centroid_exact is None else frame.centroid_exact[0]
    return steering_from_centroid(col, frame.image_width, params)
