"""Frame reduction: centroid, per-column crop-top profile, end-of-field.

All navigation signals come from the filtered stalk mask, not the raw color
mask, so residual stubble and lying crop never steer the vehicle.

The end-of-field test works on the top profile: a column whose topmost stalk
pixel sits at row r has apparent plant height ``image_height - r``, so a
column is a gap column when its top row is at least ``drop_threshold_px``
BELOW the median top row of columns that have crop at all (or when it has no
crop). A run of at least ``min_gap_width_cols`` gap columns flags the frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imagecore import BinaryMask, RgbImage
from .segmentation import SegmentationParams, segment_image
from .stalks import DetectionParams, _detect_arrays, _stalk_mask_arrays


@dataclass(frozen=True)
class EofParams:
    drop_threshold_px: int = 30
    min_gap_width_cols: int = 16

    def __post_init__(self):
        if self.drop_threshold_px < 1:
            raise ValueError("drop_threshold_px must be >= 1")
        if self.min_gap_width_cols < 1:
            raise ValueError("min_gap_width_cols must be >= 1")


@dataclass(frozen=True)
class PerceptionFrame:
    crop_fraction: float
    centroid: tuple | None  # (col, row), half-up rounded
    centroid_exact: tuple | None  # unrounded (col, row); steering input
    top_profile: np.ndarray  # per-column topmost true row, -1 where empty
    end_of_field: bool
    segments_count: int

    @property
    def image_width(self) -> int:
        return int(self.top_profile.shape[0])


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def crop_centroid(mask: BinaryMask):
    """Half-up rounded mean (col, row) of true pixels; None when empty."""
    exact = crop_centroid_exact(mask)
    if exact is None:
        return None
    return (_round_half_up(exact[0]), _round_half_up(exact[1]))


def crop_centroid_exact(mask: BinaryMask):
    bits = mask.bits
    n = int(bits.sum())
    if n == 0:
        return None
    col_counts = bits.sum(axis=0)
    row_counts = bits.sum(axis=1)
    col = float(np.dot(col_counts, np.arange(mask.width)) / n)
    row = float(np.dot(row_counts, np.arange(mask.height)) / n)
    return (col, row)


def top_height_profile(mask: BinaryMask) -> np.ndarray:
    """Per-column smallest row index holding a true pixel; -1 for empty columns."""
    bits = mask.bits
    has = bits.any(axis=0)
    tops = bits.argmax(axis=0).astype(np.int64)
    tops[~has] = -1
    return tops


def detect_end_of_field(profile: np.ndarray, params: EofParams) -> bool:
    """True iff some run of >= min_gap_width_cols columns is empty or has its
    crop top at least drop_threshold_px below the median top of present columns."""
    profile = np.asarray(profile, dtype=np.int64)
    present = profile >= 0
    if present.any():
        median_top = float(np.median(profile[present]))
        gap = ~present | (profile >= median_top + params.drop_threshold_px)
    else:
        gap = np.ones(profile.shape[0], dtype=bool)
    return _longest_true_run(gap) >= params.min_gap_width_cols


def _longest_true_run(flags: np.ndarray) -> int:
    if flags.size == 0:
        return 0
    padded = np.concatenate(([False], flags, [False]))
    edges = np.flatnonzero(padded[1:] != padded[:-1])
    if edges.size == 0:
        return 0
    return int((edges[1::2] - edges[0::2]).max())


def pinhole_image_height(object_height_m: float, distance_m: float, focal_px: float) -> float:
    """On-screen extent in pixels of an object of the given height: f * h / d."""
    if distance_m <= 0:
        raise ValueError("distance_m must be positive")
    if focal_px <= 0:
        raise ValueError("focal_px must be positive")
    if object_height_m < 0:
        raise ValueError("object_height_m must be non-negative")
    return focal_px * object_height_m / distance_m


def analyze_frame(
    img: RgbImage,
    seg: SegmentationParams,
    det: DetectionParams,
    eof: EofParams,
) -> PerceptionFrame:
    """Full pipeline: color mask -> vertical runs -> residual filter -> signals."""
    frame, _, _ = analyze_frame_full(img, seg, det, eof)
    return frame


def analyze_frame_full(
    img: RgbImage,
    seg: SegmentationParams,
    det: DetectionParams,
    eof: EofParams,
):
    """As analyze_frame, also returning (color_mask, stalk_mask)."""
    color_mask = segment_image(img, seg)
    cols, rows, lens, tilts = _detect_arrays(color_mask.bits, det)
    kept = lens >= det.min_stalk_length_px
    stalk_bits = _stalk_mask_arrays(
        cols[kept], rows[kept], lens[kept], tilts[kept], img.width, img.height
    )
    stalk = BinaryMask(stalk_bits)

    n_true = int(stalk_bits.sum())
    fraction = n_true / (img.width * img.height)
    centroid_exact = crop_centroid_exact(stalk)
    centroid = (
        None
        if centroid_exact is None
        else (_round_half_up(centroid_exact[0]), _round_half_up(centroid_exact[1]))
    )
    profile = top_height_profile(stalk)
    frame = PerceptionFrame(
        crop_fraction=fraction,
        centroid=centroid,
        centroid_exact=centroid_exact,
        top_profile=profile,
        end_of_field=detect_end_of_field(profile, eof),
        segments_count=int(kept.sum()),
    )
    return frame, color_mask, stalk
