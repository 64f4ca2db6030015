"""Benchmark the numba kernels against the pure-numpy fallback.

Runs every backend on identical inputs: a rendered field frame for the color
classifier and the full stalk pipeline, timing each stage. Usage:

    python3 benchmarks/bench_kernels.py [--width 400] [--height 300] [--repeats 10]
"""

import argparse
import time

import numpy as np

from harvestnav import kernels
from harvestnav.params import build_bundle
from harvestnav.simulator import default_start_pose, make_world, render
from harvestnav.stalks import scan_tilts


def time_it(fn, repeats):
    fn()  # warm-up (jit compile / cache load)
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats * 1000.0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--width", type=int, default=400)
    ap.add_argument("--height", type=int, default=300)
    ap.add_argument("--repeats", type=int, default=10)
    args = ap.parse_args()

    bundle = build_bundle({"image_w": args.width, "image_h": args.height})
    world = make_world("single_field", 20, 20, 1)
    pose = default_start_pose(world, bundle)
    img = render(world, pose, bundle.camera, bundle.style)
    print(f"frame: {args.width}x{args.height}, backend(s): {list(kernels.available_backends())}")

    tilts = scan_tilts(bundle.detection)
    tans = np.tan(np.radians(tilts))
    seg = bundle.segmentation

    rows = {}
    for name, backend in kernels.available_backends().items():
        mask = backend.segment_rgb(img.pixels, seg.phi1_deg, seg.phi2_deg, seg.plane_a, seg.plane_b)
        cols_a, rows_a, lens_a, dirs_a = backend.scan_directions(mask, tans)
        order = np.lexsort((tilts[dirs_a], rows_a, cols_a, np.abs(tilts[dirs_a]), -lens_a))
        keep = backend.dedup_overlapping(
            order, cols_a, rows_a, lens_a, dirs_a, tans, mask.shape[0], mask.shape[1]
        )

        def fill():
            out = np.zeros((mask.shape[1], mask.shape[0]), np.uint8)
            backend.fill_runs_t(out, cols_a[keep], rows_a[keep], lens_a[keep], tans[dirs_a[keep]])
            return out

        rows[name] = {
            "segment_rgb": time_it(
                lambda: backend.segment_rgb(img.pixels, seg.phi1_deg, seg.phi2_deg,
                                            seg.plane_a, seg.plane_b),
                args.repeats,
            ),
            "scan_directions": time_it(lambda: backend.scan_directions(mask, tans), args.repeats),
            "dedup_overlapping": time_it(
                lambda: backend.dedup_overlapping(order, cols_a, rows_a, lens_a, dirs_a, tans,
                                                  mask.shape[0], mask.shape[1]),
                args.repeats,
            ),
            "fill_runs": time_it(fill, args.repeats),
        }
        rows[name]["total"] = sum(rows[name].values())
        print(f"  [{name}] runs={len(cols_a)} kept={int(keep.sum())}")

    stages = ["segment_rgb", "scan_directions", "dedup_overlapping", "fill_runs", "total"]
    names = list(rows)
    header = f"{'stage':<20}" + "".join(f"{n + ' (ms)':>14}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for stage in stages:
        line = f"{stage:<20}" + "".join(f"{rows[n][stage]:>14.2f}" for n in names)
        if len(names) == 2:
            a, b = (rows[n][stage] for n in names)
            slow, fast = max(a, b), min(a, b)
            line += f"{slow / fast:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
