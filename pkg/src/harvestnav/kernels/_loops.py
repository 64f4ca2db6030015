"""Loop-form kernels shared by both backends.

These functions are written in nopython-compatible style: the numba backend
compiles them with ``njit`` while the numpy backend runs them interpreted.
Keeping one source guarantees identical behaviour across backends for the
sequential parts of the pipeline (greedy overlap resolution, rasterizing).
"""

import math

import numpy as np


def dedup_overlapping(order, cols, rows, lens, dir_idx, tans, height, width):
    """Greedy overlap resolution between candidate runs from all scan tilts.

    Visits candidates in priority order (longest first; ties by smaller
    absolute tilt, then base column, row, signed tilt) and keeps a candidate
    only if it shares < 50% of the shorter pixel count with every segment
    kept so far. Returns a keep flag per candidate.

    Overlap counting never touches pixels: two runs share a pixel at row r
    exactly when the anchor of one, shifted by the difference of the two
    directions' row-shift tables, equals the anchor of the other. That
    difference is a step function of r, so shared pixels are counted per
    stretch of constant difference via a per-direction anchor index.
    """
    n = cols.shape[0]
    nd = tans.shape[0]
    keep = np.zeros(n, np.bool_)
    if n == 0:
        return keep

    # per-direction row shift tables S[d, r] = floor(r * tan_d + 0.5)
    S = np.empty((nd, height), np.int64)
    for d in range(nd):
        t = tans[d]
        for r in range(height):
            S[d, r] = int(math.floor(r * t + 0.5))

    # breakpoints of D(r) = S[j, r] - S[i, r] for every ordered pair (i, j),
    # plus the largest number of rows sharing one D value: an exact upper
    # bound on the overlap any dir-i run can have with any dir-j run.
    npair = nd * nd
    bp_count = np.zeros(npair, np.int64)
    for i in range(nd):
        for j in range(nd):
            p = i * nd + j
            c = 1
            for r in range(1, height):
                if S[j, r] - S[i, r] != S[j, r - 1] - S[i, r - 1]:
                    c += 1
            bp_count[p] = c
    bp_off = np.zeros(npair + 1, np.int64)
    for p in range(npair):
        bp_off[p + 1] = bp_off[p] + bp_count[p]
    bp_rows = np.empty(bp_off[npair], np.int64)
    bp_vals = np.empty(bp_off[npair], np.int64)
    max_shared = np.empty(npair, np.int64)
    val_count = np.zeros(2 * height + 3, np.int64)
    for i in range(nd):
        for j in range(nd):
            p = i * nd + j
            k = bp_off[p]
            bp_rows[k] = 0
            bp_vals[k] = S[j, 0] - S[i, 0]
            k += 1
            for r in range(1, height):
                v = S[j, r] - S[i, r]
                if v != bp_vals[k - 1]:
                    bp_rows[k] = r
                    bp_vals[k] = v
                    k += 1
            v0 = bp_vals[bp_off[p]]
            for r in range(height):
                val_count[S[j, r] - S[i, r] - v0 + height + 1] += 1
            best = 0
            for r in range(height):
                idx = S[j, r] - S[i, r] - v0 + height + 1
                if val_count[idx] > best:
                    best = val_count[idx]
                val_count[idx] = 0
            max_shared[p] = best

    # anchor of each run: a = base_col + S[dir, base_row]
    anchors = np.empty(n, np.int64)
    for s in range(n):
        anchors[s] = cols[s] + S[dir_idx[s], rows[s]]

    # per-direction anchor index (CSR): bucket b = anchor - a_lo[dir]
    a_lo = np.empty(nd, np.int64)
    a_hi = np.empty(nd, np.int64)
    for d in range(nd):
        a_lo[d] = 1 << 60
        a_hi[d] = -(1 << 60)
    for s in range(n):
        d = dir_idx[s]
        if anchors[s] < a_lo[d]:
            a_lo[d] = anchors[s]
        if anchors[s] > a_hi[d]:
            a_hi[d] = anchors[s]
    bucket_base = np.zeros(nd + 1, np.int64)
    for d in range(nd):
        span = a_hi[d] - a_lo[d] + 1 if a_hi[d] >= a_lo[d] else 0
        bucket_base[d + 1] = bucket_base[d] + span
    nbuckets = bucket_base[nd]
    csr_off = np.zeros(nbuckets + 1, np.int64)
    for s in range(n):
        d = dir_idx[s]
        csr_off[bucket_base[d] + (anchors[s] - a_lo[d]) + 1] += 1
    for b in range(nbuckets):
        csr_off[b + 1] += csr_off[b]
    csr_runs = np.empty(n, np.int64)
    cursor = csr_off.copy()
    for s in range(n):
        d = dir_idx[s]
        b = bucket_base[d] + (anchors[s] - a_lo[d])
        csr_runs[cursor[b]] = s
        cursor[b] += 1

    counts = np.zeros(n, np.int64)
    touched = np.empty(n, np.int64)
    min_kept_len = np.full(nd, 1 << 60, np.int64)

    for oi in range(n):
        s = order[oi]
        i = dir_idx[s]
        seg_len = lens[s]
        r_bot = rows[s]
        r_top = r_bot - seg_len + 1
        a_s = anchors[s]
        n_touch = 0

        for j in range(nd):
            if j == i:
                continue
            if a_hi[j] < a_lo[j]:
                continue
            p = i * nd + j
            # a conflict needs 2*shared >= min(lens), and shared via this
            # direction pair can never exceed max_shared[p]
            if seg_len > 2 * max_shared[p] and min_kept_len[j] > 2 * max_shared[p]:
                continue
            lo_idx = bp_off[p]
            hi_idx = bp_off[p + 1]
            # last breakpoint with bp_rows[k] <= r_top
            lo = lo_idx
            hi = hi_idx - 1
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if bp_rows[mid] <= r_top:
                    lo = mid
                else:
                    hi = mid - 1
            k = lo
            r = r_top
            while r <= r_bot:
                r2 = bp_rows[k + 1] - 1 if k + 1 < hi_idx else height - 1
                if r2 > r_bot:
                    r2 = r_bot
                a = a_s + bp_vals[k]
                if a_lo[j] <= a <= a_hi[j]:
                    b = bucket_base[j] + (a - a_lo[j])
                    for idx in range(csr_off[b], csr_off[b + 1]):
                        t = csr_runs[idx]
                        if not keep[t]:
                            continue
                        t_bot = rows[t]
                        t_top = t_bot - lens[t] + 1
                        o_lo = r if r > t_top else t_top
                        o_hi = r2 if r2 < t_bot else t_bot
                        if o_lo <= o_hi:
                            if counts[t] == 0:
                                touched[n_touch] = t
                                n_touch += 1
                            counts[t] += o_hi - o_lo + 1
                r = r2 + 1
                k += 1

        conflict = False
        for kk in range(n_touch):
            t = touched[kk]
            shorter = lens[t] if lens[t] < seg_len else seg_len
            if 2 * counts[t] >= shorter:
                conflict = True
            counts[t] = 0
        if not conflict:
            keep[s] = True
            if seg_len < min_kept_len[i]:
                min_kept_len[i] = seg_len
    return keep


def fill_runs_t(out_t, cols, rows, lens, tan_by_seg):
    """Rasterize runs into a transposed (width, height) uint8 mask: writes
    along a run are then memory-contiguous."""
    n = cols.shape[0]
    for s in range(n):
        bc = cols[s]
        br = rows[s]
        t = tan_by_seg[s]
        base_shift = int(math.floor(br * t + 0.5))
        for k in range(lens[s]):
            r = br - k
            c = bc + base_shift - int(math.floor(r * t + 0.5))
            out_t[c, r] = 1
