import math

import numpy as np
import pytest

from harvestnav.navigation import (
    STOP,
    GeoFence,
    NavMode,
    NavParams,
    NavState,
    SteeringCommand,
    centroid_error_to_steer,
    distance_outside_fence,
    inside_fence,
    nav_step,
    steering_from_centroid,
    wrap_angle,
)
from harvestnav.perception import PerceptionFrame
from harvestnav.simulator.vehicle import RobotPose

PARAMS = NavParams(
    steer_gain=0.01,
    cruise_drive=0.8,
    turn_drive=0.3,
    eof_debounce_frames=3,
    done_crop_fraction=0.02,
    heading_tolerance_deg=2.0,
)
FENCE = GeoFence(((-4, -4), (24, -4), (24, 24), (-4, 24)), 0.5)


def frame(centroid_col=320.0, eof=False, fraction=0.5, width=640):
    prof = np.full(width, 100, np.int64)
    centroid = None if centroid_col is None else (int(centroid_col), 50)
    exact = None if centroid_col is None else (float(centroid_col), 50.0)
    return PerceptionFrame(
        crop_fraction=fraction,
        centroid=centroid,
        centroid_exact=exact,
        top_profile=prof,
        end_of_field=eof,
        segments_count=0 if centroid_col is None else 5,
    )


def pose(x=10.0, y=10.0, heading=0.0):
    return RobotPose(x, y, heading)


# --- steering ---------------------------------------------------------------


def test_steer_zero_at_center():
    cmd = steering_from_centroid(320.0, 640, PARAMS)
    assert cmd.steer == 0.0 and cmd.drive == PARAMS.cruise_drive


def test_steer_proportional():
    cmd = steering_from_centroid(370.0, 640, PARAMS)
    assert cmd.steer == pytest.approx(0.5)


def test_steer_absent_stops():
    assert steering_from_centroid(None, 640, PARAMS) == STOP


def test_steer_clamped():
    assert steering_from_centroid(640.0, 640, PARAMS).steer == 1.0
    assert steering_from_centroid(0.0, 640, PARAMS).steer == -1.0


def test_steer_odd_symmetry():
    for err in (3.0, 17.5, 44.0):
        left = steering_from_centroid(320 - err, 640, PARAMS).steer
        right = steering_from_centroid(320 + err, 640, PARAMS).steer
        assert left == -right


def test_unclamped_steer_scales_with_gain():
    for k in (2.0, 5.0, 10.0):
        assert centroid_error_to_steer(12.0, k * 0.01) == pytest.approx(
            k * centroid_error_to_steer(12.0, 0.01)
        )


def test_steering_command_validation():
    with pytest.raises(ValueError):
        SteeringCommand(1.5, 0.5)
    with pytest.raises(ValueError):
        SteeringCommand(0.0, -0.1)


# --- fence ------------------------------------------------------------------


def test_fence_center_inside():
    assert inside_fence((10, 10), FENCE)


def test_fence_corner_inclusive():
    assert inside_fence((-4, -4), FENCE)
    assert inside_fence((24, 24), FENCE)


def test_fence_outside():
    assert not inside_fence((25, 10), FENCE)
    assert distance_outside_fence((25, 10), FENCE) == pytest.approx(1.0)
    assert distance_outside_fence((27, 27), FENCE) == pytest.approx(math.hypot(3, 3))


def test_fence_validation():
    with pytest.raises(ValueError):
        GeoFence(((0, 0), (1, 0), (2, 1), (0, 1)), 0.5)  # not axis-aligned
    with pytest.raises(ValueError):
        GeoFence(((0, 0), (1, 0), (1, 1), (0, 1)), 0.3)  # sigma out of range
    with pytest.raises(ValueError):
        GeoFence(((0, 0), (0, 0), (1, 1), (0, 1)), 0.5)  # degenerate


# --- nav state machine ------------------------------------------------------


def test_tracking_to_turning_after_debounce():
    state = NavState()
    p = pose(heading=1.0)
    for i in range(PARAMS.eof_debounce_frames):
        state, cmd = nav_step(state, frame(eof=True), p, FENCE, PARAMS)
    assert state.mode == NavMode.TURNING
    assert state.passes_completed == 1
    assert state.turn_target_heading == pytest.approx(wrap_angle(1.0 - math.pi / 2))


def test_debounce_resets_on_clear_frame():
    state = NavState()
    p = pose()
    state, _ = nav_step(state, frame(eof=True), p, FENCE, PARAMS)
    state, _ = nav_step(state, frame(eof=False), p, FENCE, PARAMS)
    state, _ = nav_step(state, frame(eof=True), p, FENCE, PARAMS)
    state, _ = nav_step(state, frame(eof=True), p, FENCE, PARAMS)
    assert state.mode == NavMode.TRACKING
    state, _ = nav_step(state, frame(eof=True), p, FENCE, PARAMS)
    assert state.mode == NavMode.TURNING


def test_done_absorbing():
    state = NavState(mode=NavMode.DONE)
    for _ in range(5):
        state, cmd = nav_step(state, frame(), pose(), FENCE, PARAMS)
        assert state.mode == NavMode.DONE
        assert cmd == STOP


def test_turning_emits_full_right_until_target():
    state = NavState(mode=NavMode.TURNING, turn_target_heading=-math.pi / 2,
                     passes_completed=1, crop_ever_seen=True)
    p = pose(heading=0.0)
    state, cmd = nav_step(state, frame(), p, FENCE, PARAMS)
    assert state.mode == NavMode.TURNING
    assert cmd.steer == 1.0 and cmd.drive == PARAMS.turn_drive


def test_turning_completes_at_target():
    state = NavState(mode=NavMode.TURNING, turn_target_heading=-math.pi / 2,
                     passes_completed=1, crop_ever_seen=True)
    p = pose(heading=-math.pi / 2)
    state, cmd = nav_step(state, frame(), p, FENCE, PARAMS)
    assert state.mode == NavMode.TRACKING
    assert state.post_turn_check
    assert cmd.drive == PARAMS.cruise_drive


def test_scripted_heading_sequence_transition_index():
    state = NavState(mode=NavMode.TURNING, turn_target_heading=wrap_angle(-math.pi / 2),
                     passes_completed=1, crop_ever_seen=True)
    headings = [0.0, -0.5, -1.0, -1.5, -1.56, -1.6]
    modes = []
    for h in headings:
        state, _ = nav_step(state, frame(), pose(heading=h), FENCE, PARAMS)
        modes.append(state.mode)
    # tolerance is 2 deg = 0.0349 rad; first heading within it is -1.56
    assert modes == [NavMode.TURNING] * 4 + [NavMode.TRACKING, NavMode.TRACKING]


def test_post_turn_done_on_empty_eof_frame():
    state = NavState(mode=NavMode.TURNING, turn_target_heading=0.0,
                     passes_completed=4, crop_ever_seen=True)
    state, _ = nav_step(state, frame(), pose(heading=0.0), FENCE, PARAMS)
    assert state.mode == NavMode.TRACKING and state.post_turn_check
    state, cmd = nav_step(state, frame(centroid_col=None, eof=True, fraction=0.0),
                          pose(heading=0.0), FENCE, PARAMS)
    assert state.mode == NavMode.DONE
    assert cmd == STOP


def test_post_turn_continues_when_crop_visible():
    state = NavState(mode=NavMode.TRACKING, passes_completed=2,
                     post_turn_check=True, crop_ever_seen=True)
    state, _ = nav_step(state, frame(eof=False, fraction=0.4), pose(), FENCE, PARAMS)
    assert state.mode == NavMode.TRACKING
    assert not state.post_turn_check


def test_gps_breach_is_done_from_any_mode():
    far = pose(x=24 + 3 * 0.5 + 0.01, y=0.0)
    for start in (NavState(), NavState(mode=NavMode.TURNING, turn_target_heading=0.0)):
        state, cmd = nav_step(start, frame(), far, FENCE, PARAMS)
        assert state.mode == NavMode.DONE
        assert cmd == STOP


def test_gps_within_3_sigma_not_breach():
    near = pose(x=24 + 3 * 0.5 - 0.01, y=10.0)
    state, _ = nav_step(NavState(), frame(), near, FENCE, PARAMS)
    assert state.mode == NavMode.TRACKING


def test_empty_world_shortcut_done():
    state = NavState()
    p = pose()
    empty = frame(centroid_col=None, eof=True, fraction=0.0)
    for _ in range(PARAMS.eof_debounce_frames):
        state, cmd = nav_step(state, empty, p, FENCE, PARAMS)
    assert state.mode == NavMode.DONE


def test_pass_end_turns_even_with_zero_fraction():
    # once crop has been seen, a fully empty view triggers a turn, not DONE
    state = NavState()
    p = pose()
    state, _ = nav_step(state, frame(fraction=0.5), p, FENCE, PARAMS)
    empty = frame(centroid_col=None, eof=True, fraction=0.0)
    for _ in range(PARAMS.eof_debounce_frames):
        state, _ = nav_step(state, empty, p, FENCE, PARAMS)
    assert state.mode == NavMode.TURNING


def test_passes_completed_nondecreasing_and_right_turns():
    state = NavState()
    p = pose(heading=0.3)
    prev_passes = 0
    for i in range(40):
        eof = (i % 10) < PARAMS.eof_debounce_frames
        if state.mode == NavMode.TURNING:
            p = RobotPose(p.x, p.y, state.turn_target_heading)
        state, _ = nav_step(state, frame(eof=eof), p, FENCE, PARAMS)
        assert state.passes_completed >= prev_passes
        if state.mode == NavMode.TURNING:
            assert wrap_angle(state.turn_target_heading - p.heading) == pytest.approx(
                -math.pi / 2
            )
        prev_passes = state.passes_completed


def test_nav_params_validation():
    with pytest.raises(ValueError):
        NavParams(steer_gain=0.0)
    with pytest.raises(ValueError):
        NavParams(cruise_drive=1.5)
    with pytest.raises(ValueError):
        NavParams(eof_debounce_frames=0)


def test_wrap_angle():
    assert wrap_angle(0.0) == 0.0
    assert wrap_angle(math.pi) == pytest.approx(math.pi)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)
    assert wrap_angle(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
