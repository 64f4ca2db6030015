"""Flat parameter document shared by the CLI, the tuning service and the
simulator.

One JSON object, one key per tunable. Defaults below are starting values for
a yellow crop under midday light; none of them comes from field data, and the
segmentation/detection thresholds in particular are expected to be re-tuned
by the operator as lighting changes during a session.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .navigation import GeoFence, NavParams
from .perception import EofParams
from .segmentation import SegmentationParams
from .simulator.render import CameraModel, RenderStyle
from .simulator.vehicle import VehicleConfig
from .stalks import DetectionParams

DEFAULTS: dict = {
    # color cut planes
    "phi1_deg": 35.0,
    "phi2_deg": 75.0,
    "plane_a": 0.5,
    "plane_b": 0.7,
    # stalk extraction
    "tilt_tolerance_deg": 5.0,
    "min_stalk_length_px": 20,
    # end-of-field
    "eof_drop_threshold_px": 30,
    "eof_min_gap_width_cols": 200,
    # camera
    "focal_px": 160.0,
    "image_w": 400,
    "image_h": 300,
    "mount_height_m": 1.2,
    "pitch_deg": -10.0,
    "max_range_m": 8.0,
    # controller
    "steer_gain": 4.0e-05,
    "cruise_drive": 0.8,
    "turn_drive": 0.3,
    "eof_debounce_frames": 12,
    "done_crop_fraction": 0.002,
    "heading_tolerance_deg": 2.0,
    # geofence
    "gps_noise_sigma_m": 0.5,
    "fence_margin_m": 4.0,
    "fence_corners": None,  # [[x, y] * 4]; None = world bounds + margin
    # vehicle
    "wheelbase_m": 1.0,
    "max_speed_mps": 2.0,
    "max_steer_deg": 45.0,
    "dt_s": 0.1,
    "cutter_width_m": 2.4,
    "cutter_reach_m": 0.6,
    # world / renderer
    "cell_size_m": 1.0,
    "crop_height_m": 1.6,
    "residual_height_m": 0.05,
    "weed_height_m": 0.6,
    "gap_width_cells": 3,
    "hue_jitter_deg": 4.0,
    "brightness": 1.0,
    "noise_amp": 4,
}

_INT_KEYS = {
    "min_stalk_length_px",
    "eof_drop_threshold_px",
    "eof_min_gap_width_cols",
    "image_w",
    "image_h",
    "eof_debounce_frames",
    "gap_width_cells",
    "noise_amp",
}


class ParamValidationError(ValueError):
    """Carries per-key diagnostics for an invalid parameter update."""

    def __init__(self, errors: dict):
        self.errors = dict(errors)
        super().__init__("; ".join(f"{k}: {v}" for k, v in sorted(self.errors.items())))

    @property
    def keys(self) -> list:
        return sorted(self.errors)


def _coerce(key: str, value):
    if key == "fence_corners":
        if value is None:
            return None
        corners = [(float(x), float(y)) for x, y in value]
        if len(corners) != 4:
            raise ValueError("fence_corners needs exactly 4 [x, y] pairs")
        return corners
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError("must be a number")
    v = float(value)
    if not math.isfinite(v):
        raise ValueError("must be finite")
    if key in _INT_KEYS:
        if v != int(v):
            raise ValueError("must be an integer")
        return int(v)
    return v


def validate(doc: dict) -> dict:
    """Validate a full parameter document. Returns a normalized copy or
    raises ParamValidationError with one message per offending key."""
    errors = {}
    clean = {}
    for key, value in doc.items():
        if key not in DEFAULTS:
            errors[key] = "unknown parameter"
            continue
        try:
            clean[key] = _coerce(key, value)
        except (ValueError, TypeError) as exc:
            errors[key] = str(exc)
    if errors:
        raise ParamValidationError(errors)

    merged = dict(DEFAULTS)
    merged.update(clean)
    build_bundle(merged)
    return clean


@dataclass(frozen=True)
class ParamBundle:
    """Typed views over the flat document, validated on construction."""

    doc: dict
    segmentation: SegmentationParams
    detection: DetectionParams
    eof: EofParams
    nav: NavParams
    camera: CameraModel
    vehicle: VehicleConfig
    style: RenderStyle

    def fence_for_world(self, world) -> GeoFence:
        """Configured fence corners, or the world bounds plus the margin."""
        if self.doc["fence_corners"] is not None:
            return GeoFence(tuple(self.doc["fence_corners"]), self.doc["gps_noise_sigma_m"])
        w, h = world.extent
        m = self.doc["fence_margin_m"]
        corners = ((-m, -m), (w + m, -m), (w + m, h + m), (-m, h + m))
        return GeoFence(corners, self.doc["gps_noise_sigma_m"])


_SECTION_KEYS = {
    "segmentation": ("phi1_deg", "phi2_deg", "plane_a", "plane_b"),
    "detection": ("tilt_tolerance_deg", "min_stalk_length_px"),
    "eof": ("eof_drop_threshold_px", "eof_min_gap_width_cols"),
    "nav": (
        "steer_gain",
        "cruise_drive",
        "turn_drive",
        "eof_debounce_frames",
        "done_crop_fraction",
        "heading_tolerance_deg",
    ),
    "camera": ("focal_px", "image_w", "image_h", "mount_height_m", "pitch_deg", "max_range_m"),
    "vehicle": ("wheelbase_m", "max_speed_mps", "max_steer_deg", "dt_s"),
    "style": ("brightness", "noise_amp"),
}


def build_bundle(doc: dict) -> ParamBundle:
    """Construct all typed parameter objects from a full document, collecting
    per-key validation failures."""
    full = dict(DEFAULTS)
    full.update(doc)
    errors = {}

    def attempt(section, builder):
        try:
            return builder()
        except ValueError as exc:
            msg = str(exc)
            keys = _SECTION_KEYS.get(section, (section,))
            blamed = [k for k in keys if k in msg or k.removeprefix("eof_") in msg]
            for k in blamed or keys:
                errors[k] = msg
            return None

    seg = attempt(
        "segmentation",
        lambda: SegmentationParams(
            full["phi1_deg"], full["phi2_deg"], full["plane_a"], full["plane_b"]
        ),
    )
    det = attempt(
        "detection",
        lambda: DetectionParams(full["tilt_tolerance_deg"], full["min_stalk_length_px"]),
    )
    eof = attempt(
        "eof",
        lambda: EofParams(full["eof_drop_threshold_px"], full["eof_min_gap_width_cols"]),
    )
    nav = attempt(
        "nav",
        lambda: NavParams(
            steer_gain=full["steer_gain"],
            cruise_drive=full["cruise_drive"],
            turn_drive=full["turn_drive"],
            eof_debounce_frames=full["eof_debounce_frames"],
            done_crop_fraction=full["done_crop_fraction"],
            heading_tolerance_deg=full["heading_tolerance_deg"],
        ),
    )
    cam = attempt(
        "camera",
        lambda: CameraModel(
            focal_px=full["focal_px"],
            image_w=full["image_w"],
            image_h=full["image_h"],
            mount_height_m=full["mount_height_m"],
            pitch_rad=math.radians(full["pitch_deg"]),
            max_range_m=full["max_range_m"],
        ),
    )
    veh = attempt(
        "vehicle",
        lambda: VehicleConfig(
            wheelbase_m=full["wheelbase_m"],
            max_speed_mps=full["max_speed_mps"],
            max_steer_rad=math.radians(full["max_steer_deg"]),
            dt_s=full["dt_s"],
        ),
    )
    style = attempt(
        "style",
        lambda: RenderStyle(brightness=full["brightness"], noise_amp=int(full["noise_amp"])),
    )

    def extra_checks():
        if not 0.5 <= full["gps_noise_sigma_m"] <= 1.0:
            errors["gps_noise_sigma_m"] = "must lie in [0.5, 1.0]"
        if full["fence_margin_m"] < 0:
            errors["fence_margin_m"] = "must be >= 0"
        if full["cutter_width_m"] <= 0:
            errors["cutter_width_m"] = "must be positive"
        if full["cutter_reach_m"] <= 0:
            errors["cutter_reach_m"] = "must be positive"
        if full["cell_size_m"] <= 0:
            errors["cell_size_m"] = "must be positive"
        if full["crop_height_m"] <= full["residual_height_m"]:
            errors["crop_height_m"] = "must exceed residual_height_m"
        if full["residual_height_m"] < 0:
            errors["residual_height_m"] = "must be >= 0"
        if full["weed_height_m"] <= 0:
            errors["weed_height_m"] = "must be positive"
        if full["gap_width_cells"] < 1:
            errors["gap_width_cells"] = "must be >= 1"
        if full["hue_jitter_deg"] < 0 or full["hue_jitter_deg"] > 20:
            errors["hue_jitter_deg"] = "must lie in [0, 20]"
        if full["fence_corners"] is not None:
            try:
                GeoFence(tuple(full["fence_corners"]), full["gps_noise_sigma_m"])
            except ValueError as exc:
                errors["fence_corners"] = str(exc)

    extra_checks()
    if errors:
        raise ParamValidationError(errors)
    return ParamBundle(
        doc=full,
        segmentation=seg,
        detection=det,
        eof=eof,
        nav=nav,
        camera=cam,
        vehicle=veh,
        style=style,
    )


def load_params_file(path) -> dict:
    """Read and validate a JSON parameter file; unknown/invalid keys raise."""
    text = Path(path).read_text(encoding="utf-8")
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("parameter file must hold a JSON object")
    return validate(doc)


def save_params_file(path, doc: dict) -> None:
    known = {k: doc[k] for k in DEFAULTS if k in doc}
    Path(path).write_text(json.dumps(known, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def effective(doc: dict) -> dict:
    full = dict(DEFAULTS)
    full.update(doc)
    return full
