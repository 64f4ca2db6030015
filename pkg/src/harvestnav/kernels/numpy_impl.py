"""Pure-numpy kernel backend.

Vectorized equivalents of the numba kernels. Every function here must be
arithmetic-identical to its numba twin: same float64 expressions in the same
order, same half-up rounding for line stepping.
"""

import numpy as np

from . import _loops

name = "numpy"


def segment_rgb(rgb, phi1_deg, phi2_deg, plane_a, plane_b):
    """Classify every pixel of an (h, w, 3) uint8 image as crop candidate.

    Crop iff hue lies in the directed wedge phi1 -> phi2 (inclusive,
    wraparound-aware; a zero-width wedge means the full circle) and
    plane_a * saturation + value >= plane_b.
    """
    rf = rgb[..., 0].astype(np.float64) / 255.0
    gf = rgb[..., 1].astype(np.float64) / 255.0
    bf = rgb[..., 2].astype(np.float64) / 255.0

    maxc = np.maximum(rf, np.maximum(gf, bf))
    minc = np.minimum(rf, np.minimum(gf, bf))
    delta = maxc - minc

    val = maxc
    sat = np.zeros_like(maxc)
    np.divide(delta, maxc, out=sat, where=maxc > 0.0)

    safe_delta = np.where(delta > 0.0, delta, 1.0)
    hue_r = 60.0 * (((gf - bf) / safe_delta) % 6.0)
    hue_g = 60.0 * ((bf - rf) / safe_delta + 2.0)
    hue_b = 60.0 * ((rf - gf) / safe_delta + 4.0)

    is_r = maxc == rf
    is_g = ~is_r & (maxc == gf)
    hue = np.where(is_r, hue_r, np.where(is_g, hue_g, hue_b))
    hue = np.where(delta > 0.0, hue, 0.0)

    width = (phi2_deg - phi1_deg) % 360.0
    if width == 0.0:
        width = 360.0
    dist = (hue - phi1_deg) % 360.0
    return (dist <= width) & (plane_a * sat + val >= plane_b)


def scan_directions(mask, tans):
    """Maximal true runs along each near-vertical scan direction.

    For tilt with slope t, the scan path through anchor a covers pixel
    (a - floor(r*t + 0.5), r) at row r; runs break on false pixels and at
    the image border. Returns (base_col, base_row, length, dir_index) with
    base at the bottom end of each run.
    """
    h, w = mask.shape
    rr_all, cc_all = np.nonzero(mask)
    out_cols, out_rows, out_lens, out_dirs = [], [], [], []
    row_idx = np.arange(h, dtype=np.float64)

    for k in range(tans.shape[0]):
        t = tans[k]
        shift = np.floor(row_idx * t + 0.5).astype(np.int64)
        a_min = int(shift.min())
        a_max = w - 1 + int(shift.max())
        n_a = a_max - a_min + 1

        grid = np.zeros((n_a, h + 2), dtype=bool)
        if rr_all.size:
            grid[cc_all + shift[rr_all] - a_min, rr_all + 1] = True

        flat = grid.ravel()
        starts = np.flatnonzero(flat[1:] & ~flat[:-1]) + 1
        ends = np.flatnonzero(flat[:-1] & ~flat[1:])
        if starts.size == 0:
            continue

        stride = h + 2
        a_idx = starts // stride
        r_top = starts % stride - 1
        r_base = ends % stride - 1  # flat[ends] is the last true cell of the run
        lens = r_base - r_top + 1
        base_cols = (a_idx + a_min) - shift[r_base]

        out_cols.append(base_cols.astype(np.int64))
        out_rows.append(r_base.astype(np.int64))
        out_lens.append(lens.astype(np.int64))
        out_dirs.append(np.full(starts.size, k, dtype=np.int64))

    if not out_cols:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy(), empty.copy()
    return (
        np.concatenate(out_cols),
        np.concatenate(out_rows),
        np.concatenate(out_lens),
        np.concatenate(out_dirs),
    )


dedup_overlapping = _loops.dedup_overlapping
fill_runs_t = _loops.fill_runs_t
