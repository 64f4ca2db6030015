import json

import pytest

from harvestnav.params import (
    DEFAULTS,
    ParamValidationError,
    build_bundle,
    effective,
    load_params_file,
    save_params_file,
    validate,
)
from harvestnav.simulator import make_world


def test_defaults_build():
    bundle = build_bundle({})
    assert bundle.segmentation.phi1_deg == DEFAULTS["phi1_deg"]
    assert bundle.detection.min_stalk_length_px == DEFAULTS["min_stalk_length_px"]
    assert bundle.camera.image_w == DEFAULTS["image_w"]


def test_unknown_key_rejected():
    with pytest.raises(ParamValidationError) as exc:
        validate({"phi9_deg": 1})
    assert "phi9_deg" in exc.value.keys


def test_invalid_value_blames_key():
    with pytest.raises(ParamValidationError) as exc:
        validate({"plane_a": -1})
    assert "plane_a" in exc.value.keys


def test_tilt_out_of_range():
    with pytest.raises(ParamValidationError) as exc:
        validate({"tilt_tolerance_deg": 45})
    assert "tilt_tolerance_deg" in exc.value.keys


def test_multi_key_all_reported():
    with pytest.raises(ParamValidationError) as exc:
        validate({"plane_a": -1, "cruise_drive": 2.0})
    assert {"plane_a", "cruise_drive"} <= set(exc.value.keys)


def test_int_keys_coerced():
    clean = validate({"min_stalk_length_px": 25.0})
    assert clean["min_stalk_length_px"] == 25
    with pytest.raises(ParamValidationError):
        validate({"min_stalk_length_px": 25.5})


def test_file_round_trip(tmp_path):
    p = tmp_path / "params.json"
    save_params_file(p, {"phi1_deg": 30.0, "plane_b": 0.65})
    doc = load_params_file(p)
    assert doc == {"phi1_deg": 30.0, "plane_b": 0.65}
    assert effective(doc)["phi2_deg"] == DEFAULTS["phi2_deg"]


def test_file_with_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(json.JSONDecodeError):
        load_params_file(p)


def test_fence_default_margin():
    bundle = build_bundle({})
    world = make_world("single_field", 10, 8, 1)
    fence = bundle.fence_for_world(world)
    m = DEFAULTS["fence_margin_m"]
    assert fence.bounds == (-m, -m, 10 + m, 8 + m)


def test_fence_explicit_corners():
    bundle = build_bundle({"fence_corners": [[0, 0], [5, 0], [5, 6], [0, 6]]})
    world = make_world("single_field", 10, 8, 1)
    assert bundle.fence_for_world(world).bounds == (0, 0, 5, 6)


def test_gps_sigma_range_enforced():
    with pytest.raises(ParamValidationError) as exc:
        validate({"gps_noise_sigma_m": 0.2})
    assert "gps_noise_sigma_m" in exc.value.keys
