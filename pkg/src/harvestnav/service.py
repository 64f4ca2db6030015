"""HTTP tuning API.

Lets the operator console (or scripts) read and atomically update the
parameter document, run the perception pipeline on uploaded images, and step
a live simulator session under whatever parameters are current at each step.

Single global session; all mutations are serialized behind one lock. Images
travel as base64 PNG inside JSON bodies.
"""

from __future__ import annotations

import base64
import threading

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pathlib import Path

from . import params as params_mod
from .imagecore import ImageError, apply_mask_overlay, decode_image, encode_image
from .params import ParamValidationError, build_bundle
from .perception import analyze_frame_full
from .simulator import MissionLoop, default_start_pose, make_world
from .simulator.world import PRESETS

MAX_UPLOAD_BYTES = 16 * 1024 * 1024


class TunerSession:
    """Parameter document plus at most one live simulator mission."""

    def __init__(self, params_path=None):
        self.lock = threading.Lock()
        self.params_path = params_path
        self.doc = {}
        if params_path and Path(params_path).exists():
            self.doc = params_mod.load_params_file(params_path)
        self.sim: MissionLoop | None = None
        self.sim_meta: dict = {}

    def effective(self) -> dict:
        return params_mod.effective(self.doc)

    def bundle(self):
        return build_bundle(self.doc)

    def update(self, patch: dict) -> dict:
        clean = params_mod.validate({**self.doc, **patch})
        self.doc = clean
        if self.params_path:
            params_mod.save_params_file(self.params_path, self.doc)
        return self.effective()


def _error(status: int, message: str, keys=None):
    body = {"error": message}
    if keys:
        body["keys"] = list(keys)
    return JSONResponse(status_code=status, content=body)


def _b64_png(img) -> str:
    return base64.b64encode(encode_image(img, "png")).decode("ascii")


def _frame_payload(frame) -> dict:
    return {
        "crop_fraction": frame.crop_fraction,
        "segments_count": frame.segments_count,
        "centroid": None if frame.centroid is None else list(frame.centroid),
        "end_of_field": frame.end_of_field,
    }


def create_app(params_path=None) -> FastAPI:
    app = FastAPI(title="harvestnav tuner", docs_url=None, redoc_url=None)
    session = TunerSession(params_path)
    app.state.session = session

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/params")
    def get_params():
        with session.lock:
            return session.effective()

    @app.put("/params")
    async def put_params(request: Request):
        try:
            patch = await request.json()
        except Exception:
            return _error(400, "body must be a JSON object")
        if not isinstance(patch, dict):
            return _error(400, "body must be a JSON object")
        with session.lock:
            try:
                return session.update(patch)
            except ParamValidationError as exc:
                return _error(400, str(exc), keys=exc.keys)

    @app.post("/segment")
    async def segment(request: Request):
        body = await request.body()
        if len(body) > MAX_UPLOAD_BYTES:
            return _error(413, "upload exceeds 16 MiB")
        try:
            payload = await request.json()
            image_b64 = payload["image_b64"]
            raw = base64.b64decode(image_b64, validate=True)
        except Exception:
            return _error(400, "expected JSON body with base64 'image_b64'")
        if len(raw) > MAX_UPLOAD_BYTES:
            return _error(413, "image exceeds 16 MiB")
        try:
            img = decode_image(raw)
        except ImageError as exc:
            return _error(400, f"undecodable image: {exc}")
        with session.lock:
            bundle = session.bundle()
        frame, color_mask, stalk = analyze_frame_full(
            img, bundle.segmentation, bundle.detection, bundle.eof
        )
        out = _frame_payload(frame)
        out["overlay"] = _b64_png(apply_mask_overlay(img, stalk))
        out["mask_overlay"] = _b64_png(apply_mask_overlay(img, color_mask))
        return out

    @app.post("/sim/start")
    async def sim_start(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body must be a JSON object")
        preset = body.get("preset", "single_field")
        cols = int(body.get("cols", 20))
        rows = int(body.get("rows", 20))
        seed = int(body.get("seed", 1))
        if preset not in PRESETS:
            return _error(400, f"unknown preset {preset!r}; expected one of {list(PRESETS)}")
        if cols < 1 or rows < 1:
            return _error(400, "cols and rows must be >= 1")
        with session.lock:
            bundle = session.bundle()
            full = session.effective()
            world = make_world(
                preset, cols, rows, seed,
                cell_size_m=full["cell_size_m"],
                crop_height_m=full["crop_height_m"],
                residual_height_m=full["residual_height_m"],
                weed_height_m=full["weed_height_m"],
                gap_width_cells=full["gap_width_cells"],
                hue_jitter_deg=full["hue_jitter_deg"],
            )
            session.sim = MissionLoop(world, default_start_pose(world, bundle), bundle)
            session.sim_meta = {"preset": preset, "cols": cols, "rows": rows, "seed": seed}
            session.sim.last_render = None
            return {"started": session.sim_meta, "nav_mode": session.sim.nav_state.mode.value,
                    "steps_used": 0}

    @app.post("/sim/step")
    async def sim_step(request: Request):
        try:
            body = await request.json()
        except Exception:
            body = {}
        n = int(body.get("n", 1))
        if n < 1:
            return _error(400, "n must be >= 1")
        with session.lock:
            if session.sim is None:
                return _error(409, "no active simulator session; POST /sim/start first")
            for _ in range(n):
                if session.sim.done:
                    break
                bundle = session.bundle()
                session.sim.step(bundle)
            return {
                "steps_used": session.sim.steps_used,
                "nav_mode": session.sim.nav_state.mode.value,
                "done": session.sim.done,
                "coverage_fraction": session.sim.coverage_fraction(),
            }

    @app.get("/sim/frame")
    def sim_frame():
        with session.lock:
            sim = session.sim
            if sim is None:
                return _error(409, "no active simulator session; POST /sim/start first")
            bundle = session.bundle()
            if sim.last_render is None:
                from .simulator.render import render

                sim.last_render = render(sim.world, sim.pose, bundle.camera, bundle.style)
            frame, color_mask, stalk = analyze_frame_full(
                sim.last_render, bundle.segmentation, bundle.detection, bundle.eof
            )
            payload = {
                "steps_used": sim.steps_used,
                "nav_mode": sim.nav_state.mode.value,
                "done": sim.done,
                "coverage_fraction": sim.coverage_fraction(),
                "pose": {"x": sim.pose.x, "y": sim.pose.y, "heading": sim.pose.heading},
                "perception": _frame_payload(frame),
                "image_b64": _b64_png(sim.last_render),
                "overlay": _b64_png(apply_mask_overlay(sim.last_render, stalk)),
                "mask_overlay": _b64_png(apply_mask_overlay(sim.last_render, color_mask)),
            }
            return payload

    ui_dir = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
    if ui_dir.is_dir():  # serve the operator console when it has been built
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
