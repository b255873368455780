import json

import numpy as np
import pytest

from walklab import (
    Shift,
    Space,
    constant_root_certificate,
    detect_period,
    delta_state,
    dft_forward,
    fourier_coin_ms,
    grover_coin,
    measure,
)
from walklab import io as wio
from conftest import random_position_state


def test_state_csv_roundtrip_is_exact(tmp_path, rng):
    state = random_position_state(rng, 5)
    path = tmp_path / "state.csv"
    wio.dump_state_csv(state, path)
    loaded = wio.load_state_csv(path)
    assert loaded.space is Space.POSITION
    assert loaded.n_side == 5
    assert np.array_equal(loaded.grid, state.grid)


def test_momentum_state_csv_carries_axis_tag(tmp_path, rng):
    hat = dft_forward(random_position_state(rng, 4))
    path = tmp_path / "hat.csv"
    wio.dump_state_csv(hat, path)
    header = path.read_text().splitlines()[0]
    assert header.startswith("k1,k2,")
    loaded = wio.load_state(path)
    assert loaded.space is Space.MOMENTUM
    assert np.array_equal(loaded.grid, hat.grid)


def test_state_json_roundtrip(tmp_path, rng):
    state = random_position_state(rng, 3)
    path = tmp_path / "state.json"
    wio.dump_state_json(state, path)
    loaded = wio.load_state(path)
    assert loaded.space is Space.POSITION
    assert np.array_equal(loaded.grid, state.grid)


def test_load_state_rejects_unknown_suffix(tmp_path):
    path = tmp_path / "state.txt"
    path.write_text("nope")
    with pytest.raises(ValueError):
        wio.load_state(path)


def test_load_state_rejects_bad_header(tmp_path):
    path = tmp_path / "state.csv"
    path.write_text("a,b,c\n")
    with pytest.raises(ValueError):
        wio.load_state_csv(path)


def test_measure_dumps(tmp_path):
    m = measure(delta_state(2, [1, 0, 0, 0]))
    cpath = tmp_path / "m.csv"
    wio.dump_measure_csv(m, cpath)
    lines = cpath.read_text().splitlines()
    assert lines[0] == "x1,x2,prob"
    assert lines[1] == "0,0,1"
    jpath = tmp_path / "m.json"
    wio.dump_measure_json(m, jpath)
    doc = json.loads(jpath.read_text())
    assert doc["probs"][0][0] == 1.0


def test_series_csv_running_average(tmp_path):
    path = tmp_path / "series.csv"
    wio.dump_series_csv([1.0, 0.0, 0.5], path)
    rows = [line.split(",") for line in path.read_text().splitlines()]
    assert rows[0] == ["n", "p_n", "running_avg"]
    assert float(rows[1][2]) == 1.0
    assert float(rows[2][2]) == 0.5
    assert float(rows[3][2]) == 0.5


def test_certificate_json_schema(tmp_path):
    cert = constant_root_certificate(grover_coin(Shift.MS), grid_resolution=16)
    path = tmp_path / "cert.json"
    wio.dump_certificate_json(cert, path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"coin", "shift", "grid", "constant_roots", "verdict"}
    assert doc["coin"] == "grover"
    assert doc["shift"] == "ms"
    assert doc["grid"] == 16
    assert doc["verdict"] == "ConstantRoots"
    roots = [complex(re, im) for re, im in doc["constant_roots"]]
    assert any(abs(r - 1) < 1e-9 for r in roots)
    assert any(abs(r + 1) < 1e-9 for r in roots)


def test_period_report_dumps(tmp_path):
    report = detect_period(delta_state(2, [1, 0, 0, 0]), fourier_coin_ms(), 20)
    jpath = tmp_path / "period.json"
    wio.dump_period_json(report, jpath)
    doc = json.loads(jpath.read_text())
    assert doc["period"] == 16
    assert doc["horizon"] == 20
    cpath = tmp_path / "period.csv"
    wio.dump_period_csv(report, cpath)
    rows = cpath.read_text().splitlines()
    assert rows[0] == "period,horizon,max_residual"
    assert rows[1].startswith("16,20,")


def test_seventeen_digit_floats_roundtrip(tmp_path, rng):
    state = random_position_state(rng, 2)
    path = tmp_path / "s.csv"
    wio.dump_state_csv(state, path)
    reloaded = wio.load_state_csv(path)
    # not merely close: bit-for-bit equal
    assert state.grid.tobytes() == reloaded.grid.tobytes()
