"""Numba kernel backend: njit-compiled hot loops."""

import math

import numpy as np
from numba import njit

from . import _loops

name = "numba"


@njit(cache=True)
def _segment_rgb_u8(rgb, phi1_deg, phi2_deg, plane_a, plane_b):
    h, w = rgb.shape[0], rgb.shape[1]
    out = np.zeros((h, w), np.uint8)
    width = (phi2_deg - phi1_deg) % 360.0
    if width == 0.0:
        width = 360.0
    for i in range(h):
        for j in range(w):
            rf = rgb[i, j, 0] / 255.0
            gf = rgb[i, j, 1] / 255.0
            bf = rgb[i, j, 2] / 255.0
            maxc = max(rf, max(gf, bf))
            minc = min(rf, min(gf, bf))
            delta = maxc - minc
            val = maxc
            sat = 0.0 if maxc == 0.0 else delta / maxc
            if delta > 0.0:
                if maxc == rf:
                    hue = 60.0 * (((gf - bf) / delta) % 6.0)
                elif maxc == gf:
                    hue = 60.0 * ((bf - rf) / delta + 2.0)
                else:
                    hue = 60.0 * ((rf - gf) / delta + 4.0)
            else:
                hue = 0.0
            dist = (hue - phi1_deg) % 360.0
            if dist <= width and plane_a * sat + val >= plane_b:
                out[i, j] = 1
    return out


def segment_rgb(rgb, phi1_deg, phi2_deg, plane_a, plane_b):
    return _segment_rgb_u8(
        np.ascontiguousarray(rgb),
        float(phi1_deg),
        float(phi2_deg),
        float(plane_a),
        float(plane_b),
    ).astype(bool)


@njit(cache=True)
def _scan_directions_t(mask_t, tans, height):
    """Scan over the transposed mask (width, height) so the inner row walk
    reads contiguous memory."""
    w = mask_t.shape[0]
    h = height
    n_dir = tans.shape[0]
    shift = np.empty(h, np.int64)

    # first pass counts runs so the output arrays are exact
    total = 0
    for k in range(n_dir):
        t = tans[k]
        s_min = 0
        s_max = 0
        for r in range(h):
            shift[r] = int(math.floor(r * t + 0.5))
            if shift[r] < s_min:
                s_min = shift[r]
            if shift[r] > s_max:
                s_max = shift[r]
        for a in range(s_min, w + s_max):
            prev = False
            for r in range(h):
                c = a - shift[r]
                cur = c >= 0 and c < w and mask_t[c, r]
                if cur and not prev:
                    total += 1
                prev = cur

    cols = np.empty(total, np.int64)
    rows = np.empty(total, np.int64)
    lens = np.empty(total, np.int64)
    dirs = np.empty(total, np.int64)
    n = 0
    for k in range(n_dir):
        t = tans[k]
        s_min = 0
        s_max = 0
        for r in range(h):
            shift[r] = int(math.floor(r * t + 0.5))
            if shift[r] < s_min:
                s_min = shift[r]
            if shift[r] > s_max:
                s_max = shift[r]
        for a in range(s_min, w + s_max):
            run = 0
            for r in range(h):
                c = a - shift[r]
                if c >= 0 and c < w and mask_t[c, r]:
                    run += 1
                else:
                    if run > 0:
                        cols[n] = a - shift[r - 1]
                        rows[n] = r - 1
                        lens[n] = run
                        dirs[n] = k
                        n += 1
                    run = 0
            if run > 0:
                cols[n] = a - shift[h - 1]
                rows[n] = h - 1
                lens[n] = run
                dirs[n] = k
                n += 1
    return cols, rows, lens, dirs


def scan_directions(mask, tans):
    mask_t = np.ascontiguousarray(mask.T)
    return _scan_directions_t(mask_t, tans, mask.shape[0])


dedup_overlapping = njit(cache=True)(_loops.dedup_overlapping)
fill_runs_t = njit(cache=True)(_loops.fill_runs_t)
