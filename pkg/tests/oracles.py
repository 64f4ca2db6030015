"""Independent brute-force oracles used by the test suite.

Everything here is written against the documented contracts, deliberately
avoiding the library's vectorized/jitted code paths: per-pixel walks, python
sets, manual medians. Slow and obviously correct.
"""

import colorsys
import math


def hsv_oracle(r, g, b):
    """Stdlib-based RGB->HSV, hue in degrees."""
    h, s, v = colorsys.rgb_to_hsv(r / 255.0, g / 255.0, b / 255.0)
    return (h * 360.0) % 360.0, s, v


def classify_oracle(hue, sat, val, phi1, phi2, a, b):
    """Direct case-split wedge membership plus the plane inequality."""
    p1 = phi1 % 360.0
    p2 = phi2 % 360.0
    h = hue % 360.0
    if p1 == p2:
        in_wedge = True
    elif p1 < p2:
        in_wedge = p1 <= h <= p2
    else:
        in_wedge = h >= p1 or h <= p2
    return in_wedge and (a * sat + val >= b)


def shift_table(height, tilt_deg):
    t = math.tan(math.radians(tilt_deg))
    return [int(math.floor(r * t + 0.5)) for r in range(height)]


def runs_for_direction(bits, tilt_deg):
    """Per-pixel walk: every true pixel that starts a run is walked downward
    along the rasterized direction. Returns dicts with base/len/tilt."""
    h, w = bits.shape
    shift = shift_table(h, tilt_deg)

    def pixel_on_path(col_anchor, r):
        c = col_anchor - shift[r]
        if 0 <= c < w and bits[r, c]:
            return c
        return None

    runs = []
    for r0 in range(h):
        for c0 in range(w):
            if not bits[r0, c0]:
                continue
            anchor = c0 + shift[r0]
            # run start: predecessor (one row up along the path) is off/false
            if r0 > 0 and pixel_on_path(anchor, r0 - 1) is not None:
                continue
            pixels = [(c0, r0)]
            r = r0
            while r + 1 < h:
                c_next = pixel_on_path(anchor, r + 1)
                if c_next is None:
                    break
                r += 1
                pixels.append((c_next, r))
            base = pixels[-1]
            runs.append(
                {
                    "base": base,
                    "length": len(pixels),
                    "tilt": float(tilt_deg),
                    "pixels": frozenset(pixels),
                }
            )
    return runs


def detect_oracle(bits, tilt_tolerance_deg):
    """All runs over whole-degree tilts, then greedy 50%-overlap dedup using
    python sets. Returns a sorted list of (col, row, length, tilt)."""
    tmax = int(math.floor(tilt_tolerance_deg))
    candidates = []
    for d in range(-tmax, tmax + 1):
        candidates.extend(runs_for_direction(bits, d))

    candidates.sort(
        key=lambda s: (-s["length"], abs(s["tilt"]), s["base"][0], s["base"][1], s["tilt"])
    )
    kept = []
    pixel_owners = {}
    for cand in candidates:
        overlap_counts = {}
        for px in cand["pixels"]:
            for kid in pixel_owners.get(px, ()):  # ids into kept
                overlap_counts[kid] = overlap_counts.get(kid, 0) + 1
        conflict = any(
            2 * cnt >= min(kept[kid]["length"], cand["length"])
            for kid, cnt in overlap_counts.items()
        )
        if conflict:
            continue
        kid = len(kept)
        kept.append(cand)
        for px in cand["pixels"]:
            pixel_owners.setdefault(px, []).append(kid)

    out = [(s["base"][0], s["base"][1], s["length"], s["tilt"]) for s in kept]
    out.sort()
    return out


def eof_oracle(profile, drop_threshold, min_gap_width):
    """Manual median + exhaustive window scan over the profile list
    (-1 = empty column)."""
    present = sorted(p for p in profile if p >= 0)
    n = len(profile)
    if present:
        m = len(present)
        if m % 2:
            median = float(present[m // 2])
        else:
            median = (present[m // 2 - 1] + present[m // 2]) / 2.0
        gap = [p < 0 or p >= median + drop_threshold for p in profile]
    else:
        gap = [True] * n
    for start in range(n - min_gap_width + 1):
        if all(gap[start : start + min_gap_width]):
            return True
    return False
