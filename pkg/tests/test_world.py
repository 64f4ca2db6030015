import numpy as np
import pytest

from harvestnav.simulator.world import CellState, FieldWorld, make_world


def test_single_field_all_uncut():
    w = make_world("single_field", 20, 20, 1)
    assert w.count_state(CellState.UNCUT) == 400
    assert w.cols == 20 and w.rows == 20


def test_two_fields_gap_band():
    w = make_world("two_fields_with_gap", 15, 20, 3, gap_width_cells=3)
    assert w.count_state(CellState.SOIL) == 3 * 15
    soil_rows = sorted(set(np.nonzero(w.state == CellState.SOIL)[0].tolist()))
    assert soil_rows == [soil_rows[0], soil_rows[0] + 1, soil_rows[0] + 2]
    assert (w.height_m[soil_rows[0]] == 0).all()


def test_weedy_corner():
    w = make_world("weedy_corner", 20, 16, 2)
    n_weed = w.count_state(CellState.WEED)
    assert n_weed == (20 // 4) * (16 // 4)
    assert w.cell(0, 0).state == CellState.WEED


def test_world_determinism():
    a = make_world("two_fields_with_gap", 12, 18, 99)
    b = make_world("two_fields_with_gap", 12, 18, 99)
    assert np.array_equal(a.state, b.state)
    assert np.array_equal(a.height_m, b.height_m)
    assert np.array_equal(a.hue_jitter, b.hue_jitter)
    c = make_world("two_fields_with_gap", 12, 18, 100)
    assert not np.array_equal(a.hue_jitter, c.hue_jitter)


def test_unknown_preset():
    with pytest.raises(ValueError):
        make_world("lake", 5, 5, 1)


def test_bad_dimensions():
    with pytest.raises(ValueError):
        make_world("single_field", 0, 5, 1)


def test_height_invariant():
    w = make_world("single_field", 4, 4, 1, crop_height_m=1.5, residual_height_m=0.1)
    assert (w.height_m[w.state == CellState.UNCUT] > w.residual_height_m).all()
    with pytest.raises(ValueError):
        make_world("single_field", 4, 4, 1, crop_height_m=0.1, residual_height_m=0.2)


def test_cell_accessor():
    w = make_world("single_field", 6, 5, 7)
    cell = w.cell(2, 3)
    assert cell.state == CellState.UNCUT
    assert cell.height_m == w.height_m[3, 2]
