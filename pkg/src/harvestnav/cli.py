"""Command-line entry points: segment, detect, simulate, tune-serve.

All subcommands read the same flat parameter file (JSON; default from the
HARVESTNAV_PARAMS environment variable) and accept repeatable
``--set key=value`` overrides. Data goes to stdout, diagnostics to stderr,
exit status 0 only on full success.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import params as params_mod
from .imagecore import RgbImage, load_image, save_image, save_mask_overlay
from .params import ParamValidationError, build_bundle, load_params_file
from .perception import analyze_frame_full
from .simulator import default_start_pose, make_world, run_mission
from .simulator.world import PRESETS


def _parse_set(values):
    out = {}
    for item in values or ():
        if "=" not in item:
            raise ValueError(f"--set expects key=value, got {item!r}")
        key, _, raw = item.partition("=")
        try:
            out[key] = json.loads(raw)
        except json.JSONDecodeError:
            out[key] = raw
    return out


def _load_doc(args) -> dict:
    doc = {}
    path = args.params or os.environ.get("HARVESTNAV_PARAMS")
    if path:
        doc.update(load_params_file(path))
    doc.update(params_mod.validate(_parse_set(args.set)))
    return doc


def _world_from_doc(preset, cols, rows, seed, doc):
    full = params_mod.effective(doc)
    return make_world(
        preset,
        cols,
        rows,
        seed,
        cell_size_m=full["cell_size_m"],
        crop_height_m=full["crop_height_m"],
        residual_height_m=full["residual_height_m"],
        weed_height_m=full["weed_height_m"],
        gap_width_cells=full["gap_width_cells"],
        hue_jitter_deg=full["hue_jitter_deg"],
    )


def cmd_segment(args) -> int:
    doc = _load_doc(args)
    bundle = build_bundle(doc)
    img = load_image(args.input)
    frame, color_mask, stalk = analyze_frame_full(
        img, bundle.segmentation, bundle.detection, bundle.eof
    )
    if args.out:
        mask_img = RgbImage(
            np.where(color_mask.bits[..., None], 255, 0).astype(np.uint8).repeat(3, axis=2)
        )
        save_image(mask_img, args.out)
        overlay_path = args.overlay or _derive_overlay_path(args.out)
        save_mask_overlay(img, color_mask, overlay_path)
    print(f"{frame.crop_fraction:.6f}")
    return 0


def _derive_overlay_path(out_path):
    p = Path(out_path)
    return p.with_name(p.stem + "_overlay" + p.suffix)


def cmd_detect(args) -> int:
    doc = _load_doc(args)
    bundle = build_bundle(doc)
    img = load_image(args.input)
    frame, _, stalk = analyze_frame_full(img, bundle.segmentation, bundle.detection, bundle.eof)
    if args.out:
        save_mask_overlay(img, stalk, args.out)
    if frame.centroid is None:
        print(f"segments: {frame.segments_count}, centroid: none")
    else:
        print(f"segments: {frame.segments_count}, centroid: ({frame.centroid[0]}, {frame.centroid[1]})")
    return 0


def cmd_simulate(args) -> int:
    doc = _load_doc(args)
    bundle = build_bundle(doc)
    world = _world_from_doc(args.preset, args.cols, args.rows, args.seed, doc)
    pose = default_start_pose(world, bundle)

    frame_sink = None
    if args.frames:
        frames_dir = Path(args.frames)
        frames_dir.mkdir(parents=True, exist_ok=True)

        def frame_sink(step, img):
            save_image(img, frames_dir / f"frame_{step:06d}.png")

    report = run_mission(world, pose, bundle, max_steps=args.max_steps, frame_sink=frame_sink)
    payload = report.to_json_dict()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    else:
        print(json.dumps(payload))
    if not report.reached_done:
        print(
            f"error: mission did not finish within {args.max_steps} steps "
            f"(coverage {report.coverage_fraction:.3f})",
            file=sys.stderr,
        )
        return 3
    return 0


def cmd_tune_serve(args) -> int:
    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"error: --bind expects host:port, got {args.bind!r}", file=sys.stderr)
        return 2
    from .service import create_app

    app = create_app(args.params or os.environ.get("HARVESTNAV_PARAMS"))
    import uvicorn

    try:
        uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    except (SystemExit, OSError) as exc:
        print(f"error: could not serve on {args.bind}: {exc}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harvestnav",
        description="Crop segmentation, stalk detection, field-coverage simulation "
        "and parameter tuning service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--params", help="JSON parameter file (default: $HARVESTNAV_PARAMS)")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override one parameter (repeatable)")

    p_seg = sub.add_parser("segment", help="classify crop pixels in an image")
    p_seg.add_argument("input")
    p_seg.add_argument("--out", help="write the binary mask image here")
    p_seg.add_argument("--overlay", help="write the mask overlay here (default: <out>_overlay)")
    common(p_seg)
    p_seg.set_defaults(fn=cmd_segment)

    p_det = sub.add_parser("detect", help="detect vertical stalks in an image")
    p_det.add_argument("input")
    p_det.add_argument("--out", help="write the stalk overlay image here")
    common(p_det)
    p_det.set_defaults(fn=cmd_detect)

    p_sim = sub.add_parser("simulate", help="run a closed-loop harvest mission")
    p_sim.add_argument("--preset", choices=PRESETS, default="single_field")
    p_sim.add_argument("--cols", type=int, default=20)
    p_sim.add_argument("--rows", type=int, default=20)
    p_sim.add_argument("--seed", type=int, default=1)
    p_sim.add_argument("--max-steps", type=int, default=20000)
    p_sim.add_argument("--out", help="write the mission report JSON here")
    p_sim.add_argument("--frames", help="dump per-step renders into this directory")
    common(p_sim)
    p_sim.set_defaults(fn=cmd_simulate)

    p_srv = sub.add_parser("tune-serve", help="serve the HTTP tuning API")
    p_srv.add_argument("--bind", default="127.0.0.1:8077", metavar="HOST:PORT")
    common(p_srv)
    p_srv.set_defaults(fn=cmd_tune_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParamValidationError as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
