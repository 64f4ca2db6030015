"""Crop-cell grid worlds.

The field is a cols x rows grid of square cells. Cell (col i, row j) covers
x in [i*s, (i+1)*s], y in [j*s, (j+1)*s] with s the cell size in meters.
World generation is fully determined by (preset, dimensions, seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

PRESETS = ("single_field", "two_fields_with_gap", "weedy_corner")


class CellState(IntEnum):
    SOIL = 0
    UNCUT = 1
    RESIDUAL = 2
    LYING = 3
    WEED = 4


@dataclass(frozen=True)
class CropCell:
    state: CellState
    height_m: float
    hue_jitter: float


@dataclass(frozen=True)
class FieldWorld:
    cols: int
    rows: int
    cell_size_m: float
    rng_seed: int
    state: np.ndarray  # (rows, cols) uint8 of CellState
    height_m: np.ndarray  # (rows, cols) float64
    hue_jitter: np.ndarray  # (rows, cols) float64 degrees
    residual_height_m: float

    def __post_init__(self):
        if self.cols < 1 or self.rows < 1:
            raise ValueError("grid dimensions must be >= 1")
        if self.cell_size_m <= 0:
            raise ValueError("cell_size_m must be positive")
        for arr in (self.state, self.height_m, self.hue_jitter):
            if arr.shape != (self.rows, self.cols):
                raise ValueError("cell arrays must have shape (rows, cols)")

    def cell(self, col: int, row: int) -> CropCell:
        return CropCell(
            CellState(int(self.state[row, col])),
            float(self.height_m[row, col]),
            float(self.hue_jitter[row, col]),
        )

    @property
    def extent(self) -> tuple:
        """(width_m, height_m) of the grid."""
        return (self.cols * self.cell_size_m, self.rows * self.cell_size_m)

    def count_state(self, state: CellState) -> int:
        return int((self.state == int(state)).sum())


def make_world(
    preset: str,
    cols: int,
    rows: int,
    seed: int,
    *,
    cell_size_m: float = 1.0,
    crop_height_m: float = 1.6,
    residual_height_m: float = 0.05,
    weed_height_m: float = 0.6,
    gap_width_cells: int = 3,
    hue_jitter_deg: float = 4.0,
) -> FieldWorld:
    """Build a deterministic preset world.

    single_field: every cell uncut crop.
    two_fields_with_gap: two uncut blocks separated by a soil band of
        gap_width_cells rows (the band runs along x, so driving +y crosses it).
    weedy_corner: uncut crop with a weed patch in the low-x/low-y corner.
    """
    if preset not in PRESETS:
        raise ValueError(f"unknown preset {preset!r}; expected one of {PRESETS}")
    if cols < 1 or rows < 1:
        raise ValueError("grid dimensions must be >= 1")
    if crop_height_m <= residual_height_m or residual_height_m < 0:
        raise ValueError("need crop_height_m > residual_height_m >= 0")

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 0x57524C44])))
    state = np.full((rows, cols), int(CellState.UNCUT), np.uint8)
    height = np.full((rows, cols), crop_height_m, np.float64)
    jitter = rng.uniform(-hue_jitter_deg, hue_jitter_deg, size=(rows, cols))

    if preset == "two_fields_with_gap":
        if gap_width_cells < 1 or gap_width_cells >= rows - 1:
            raise ValueError("gap_width_cells must fit between two non-empty blocks")
        g0 = (rows - gap_width_cells) // 2
        state[g0 : g0 + gap_width_cells, :] = int(CellState.SOIL)
        height[g0 : g0 + gap_width_cells, :] = 0.0
    elif preset == "weedy_corner":
        wc = max(1, cols // 4)
        wr = max(1, rows // 4)
        state[:wr, :wc] = int(CellState.WEED)
        height[:wr, :wc] = weed_height_m

    return FieldWorld(
        cols=cols,
        rows=rows,
        cell_size_m=cell_size_m,
        rng_seed=seed,
        state=state,
        height_m=height,
        hue_jitter=jitter,
        residual_height_m=residual_height_m,
    )
