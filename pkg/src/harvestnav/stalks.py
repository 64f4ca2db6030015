"""Near-vertical segment extraction from a crop mask.

Standing stalks show up as long runs of true pixels along near-vertical
lines. We scan the mask along one rasterized direction per whole degree of
tilt inside the tolerance, collect maximal runs, resolve overlaps between
directions, and drop short runs (residual stubble left by the cutter).

Tilt sign: positive tilt leans the top of the segment toward larger column
indices. Segment length is the pixel count along the run (one pixel per
row). A run's pixel at row r sits in column
``base_col + S(base_row) - S(r)`` with ``S(r) = floor(r * tan(tilt) + 0.5)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .imagecore import BinaryMask


@dataclass(frozen=True)
class DetectionParams:
    tilt_tolerance_deg: float = 5.0
    min_stalk_length_px: int = 20

    def __post_init__(self):
        if not 0 <= self.tilt_tolerance_deg < 45:
            raise ValueError("tilt_tolerance_deg must be in [0, 45)")
        if self.min_stalk_length_px < 1:
            raise ValueError("min_stalk_length_px must be >= 1")


@dataclass(frozen=True)
class StalkSegment:
    base: tuple  # (col, row) of the bottom pixel
    length_px: int
    tilt_deg: float


def scan_tilts(params: DetectionParams) -> np.ndarray:
    """Whole-degree tilt set inside the tolerance; always includes 0."""
    t = int(math.floor(params.tilt_tolerance_deg))
    return np.arange(-t, t + 1, dtype=np.float64)


def _detect_arrays(bits: np.ndarray, params: DetectionParams):
    """Array-form detection: returns (cols, rows, lens, tilts) after overlap
    resolution, sorted by (base col, base row, tilt, length)."""
    h, w = bits.shape
    tilts = scan_tilts(params)
    tans = np.tan(np.radians(tilts))
    cols, rows, lens, dir_idx = kernels.scan_directions(
        np.ascontiguousarray(bits, dtype=np.uint8) != 0, tans
    )
    if cols.size == 0:
        e = np.empty(0, np.int64)
        return e, e.copy(), e.copy(), np.empty(0, np.float64)

    seg_tilts = tilts[dir_idx]
    # priority: longest, then |tilt|, base col, base row, signed tilt
    order = np.lexsort((seg_tilts, rows, cols, np.abs(seg_tilts), -lens))
    keep = kernels.dedup_overlapping(order, cols, rows, lens, dir_idx, tans, h, w)

    cols, rows, lens, seg_tilts = cols[keep], rows[keep], lens[keep], seg_tilts[keep]
    final = np.lexsort((lens, seg_tilts, rows, cols))
    return cols[final], rows[final], lens[final], seg_tilts[final]


def detect_vertical_segments(mask: BinaryMask, params: DetectionParams) -> list:
    """All maximal near-vertical runs of true pixels, before length filtering."""
    cols, rows, lens, tilts = _detect_arrays(mask.bits, params)
    return [
        StalkSegment((int(c), int(r)), int(n), float(t))
        for c, r, n, t in zip(cols, rows, lens, tilts)
    ]


def filter_residual(segments: list, params: DetectionParams) -> list:
    """Drop segments shorter than the residual-crop threshold; keeps order."""
    return [s for s in segments if s.length_px >= params.min_stalk_length_px]


def segment_pixels(seg: StalkSegment):
    """(col, row) pixels covered by a segment, bottom to top."""
    tan_t = math.tan(math.radians(seg.tilt_deg))
    bc, br = seg.base
    base_shift = int(math.floor(br * tan_t + 0.5))
    return [
        (bc + base_shift - int(math.floor((br - k) * tan_t + 0.5)), br - k)
        for k in range(seg.length_px)
    ]


def stalk_mask(segments: list, width: int, height: int) -> BinaryMask:
    """Rasterize segments into a fresh mask; rejects out-of-bounds segments."""
    for seg in segments:
        for c, r in segment_pixels(seg):
            if not (0 <= c < width and 0 <= r < height):
                raise ValueError(f"segment {seg} leaves the {width}x{height} mask bounds")
    out_t = np.zeros((width, height), np.uint8)
    if segments:
        cols = np.array([s.base[0] for s in segments], np.int64)
        rows = np.array([s.base[1] for s in segments], np.int64)
        lens = np.array([s.length_px for s in segments], np.int64)
        tans = np.tan(np.radians(np.array([s.tilt_deg for s in segments], np.float64)))
        kernels.fill_runs_t(out_t, cols, rows, lens, tans)
    return BinaryMask(np.ascontiguousarray(out_t.T) != 0)


def _stalk_mask_arrays(cols, rows, lens, tilts, width: int, height: int) -> np.ndarray:
    """Internal, no bounds re-check: rasterize detection output arrays."""
    out_t = np.zeros((width, height), np.uint8)
    if cols.size:
        kernels.fill_runs_t(out_t, cols, rows, lens, np.tan(np.radians(tilts)))
    return np.ascontiguousarray(out_t.T) != 0
