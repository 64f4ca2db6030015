"""Deterministic forward-facing pinhole renderer.

Every non-soil cell within camera range becomes a vertical billboard stripe:
its on-screen height follows the pinhole relation f*h/d and its base row the
ground-plane projection. Stripes are painted far to near so close crop
occludes distant crop. Soil is deliberately colored close to the crop hue at
low saturation/value, and seeded per-pixel noise is added last, so the color
classifier has to work for its living.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from ..imagecore import RgbImage, hsv_to_rgb
from .vehicle import RobotPose
from .world import CellState, FieldWorld


@dataclass(frozen=True)
class CameraModel:
    focal_px: float = 160.0
    image_w: int = 400
    image_h: int = 300
    mount_height_m: float = 1.2
    pitch_rad: float = math.radians(-10.0)
    max_range_m: float = 8.0

    def __post_init__(self):
        if self.focal_px <= 0:
            raise ValueError("focal_px must be positive")
        if self.image_w < 1 or self.image_h < 1:
            raise ValueError("image dimensions must be >= 1")
        if self.max_range_m <= 0:
            raise ValueError("max_range_m must be positive")


@dataclass(frozen=True)
class RenderStyle:
    brightness: float = 1.0  # scales V of everything, before noise
    noise_amp: int = 4  # uniform per-channel noise in [-amp, amp]
    crop_hue: float = 60.0
    crop_sat: float = 0.80
    crop_val: float = 0.85
    residual_sat: float = 0.70
    residual_val: float = 0.80
    lying_height_m: float = 0.12
    weed_hue: float = 115.0
    weed_sat: float = 0.70
    weed_val: float = 0.50
    soil_hue: float = 47.0
    soil_sat: float = 0.22
    soil_val: float = 0.50
    sky_hue: float = 205.0
    sky_sat: float = 0.25
    sky_val: float = 0.85

    def __post_init__(self):
        if not 0 < self.brightness <= 2:
            raise ValueError("brightness must be in (0, 2]")
        if not 0 <= self.noise_amp <= 16:
            raise ValueError("noise_amp must be in [0, 16]")


_NEAR_CLIP_M = 0.3


def _frame_rng(world_seed: int, pose: RobotPose) -> np.random.Generator:
    """Noise generator fully determined by the world seed and the exact pose."""
    bits = struct.pack("<dddd", pose.x, pose.y, pose.heading, pose.steer_angle)
    words = [int.from_bytes(bits[i : i + 8], "little") for i in range(0, 32, 8)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([world_seed] + words)))


def _cell_color(state: int, jitter: float, style: RenderStyle) -> tuple:
    if state == CellState.UNCUT:
        return (style.crop_hue + jitter, style.crop_sat, style.crop_val)
    if state == CellState.RESIDUAL:
        return (style.crop_hue + jitter - 2.0, style.residual_sat, style.residual_val)
    if state == CellState.LYING:
        return (style.crop_hue + jitter - 4.0, style.residual_sat, style.residual_val)
    return (style.weed_hue + jitter, style.weed_sat, style.weed_val)


def render(
    world: FieldWorld,
    pose: RobotPose,
    cam: CameraModel,
    style: RenderStyle = RenderStyle(),
) -> RgbImage:
    """Render the field from the vehicle camera. Bit-identical for equal inputs."""
    w, h = cam.image_w, cam.image_h
    cx, cy = w / 2.0, h / 2.0
    f = cam.focal_px
    cos_p, sin_p = math.cos(cam.pitch_rad), math.sin(cam.pitch_rad)
    bright = style.brightness

    img = np.empty((h, w, 3), np.uint8)
    horizon = cy + f * math.tan(cam.pitch_rad)
    horizon_row = max(0, min(h, int(math.floor(horizon))))
    img[:horizon_row] = hsv_to_rgb(style.sky_hue, style.sky_sat, min(1.0, style.sky_val * bright))
    img[horizon_row:] = hsv_to_rgb(
        style.soil_hue, style.soil_sat, min(1.0, style.soil_val * bright)
    )

    fx, fy = math.cos(pose.heading), math.sin(pose.heading)
    rx, ry = math.sin(pose.heading), -math.cos(pose.heading)
    half = world.cell_size_m / 2.0
    tan_half_fov = (w / 2.0) / f

    # candidate cells: bounding box of the visibility circle
    s = world.cell_size_m
    i_lo = max(0, int(math.floor((pose.x - cam.max_range_m) / s)) - 1)
    i_hi = min(world.cols - 1, int(math.ceil((pose.x + cam.max_range_m) / s)) + 1)
    j_lo = max(0, int(math.floor((pose.y - cam.max_range_m) / s)) - 1)
    j_hi = min(world.rows - 1, int(math.ceil((pose.y + cam.max_range_m) / s)) + 1)

    visible = []  # (dist, row, col, X, Z0)
    for j in range(j_lo, j_hi + 1):
        for i in range(i_lo, i_hi + 1):
            state = world.state[j, i]
            if state == CellState.SOIL:
                continue
            dx = (i + 0.5) * s - pose.x
            dy = (j + 0.5) * s - pose.y
            dist = math.hypot(dx, dy)
            if dist > cam.max_range_m:
                continue
            z0 = dx * fx + dy * fy
            if z0 < _NEAR_CLIP_M:
                continue
            xlat = dx * rx + dy * ry
            if abs(xlat) - half > z0 * tan_half_fov:
                continue
            visible.append((dist, j, i, xlat, z0))

    visible.sort(key=lambda v: (-v[0], v[1], v[2]))

    for dist, j, i, xlat, z0 in visible:
        state = int(world.state[j, i])
        cell_h = float(world.height_m[j, i])
        if state == CellState.LYING:
            cell_h = min(cell_h, style.lying_height_m)
        if cell_h <= 0:
            continue

        yb = -cam.mount_height_m
        yt = cell_h - cam.mount_height_m
        zb = yb * sin_p + z0 * cos_p
        zt = yt * sin_p + z0 * cos_p
        if zb <= 0.05 or zt <= 0.05:
            continue
        row_base = int(math.floor(cy - f * (yb * cos_p - z0 * sin_p) / zb + 0.5))
        row_top = int(math.floor(cy - f * (yt * cos_p - z0 * sin_p) / zt + 0.5))
        col_lo = int(math.floor(cx + f * (xlat - half) / zb + 0.5))
        col_hi = int(math.floor(cx + f * (xlat + half) / zb + 0.5))

        r0 = max(0, min(row_top, row_base))
        r1 = min(h - 1, max(row_top, row_base))
        c0 = max(0, col_lo)
        c1 = min(w - 1, col_hi)
        if r0 > r1 or c0 > c1:
            continue
        hue, sat, val = _cell_color(state, float(world.hue_jitter[j, i]), style)
        img[r0 : r1 + 1, c0 : c1 + 1] = hsv_to_rgb(hue, sat, min(1.0, val * bright))

    if style.noise_amp > 0:
        rng = _frame_rng(world.rng_seed, pose)
        noise = rng.integers(
            -style.noise_amp, style.noise_amp + 1, size=img.shape, dtype=np.int16
        )
        img = np.clip(img.astype(np.int16) + noise, 0, 255).astype(np.uint8)

    return RgbImage(img)
