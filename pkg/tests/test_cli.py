import csv
import json
import os

import numpy as np
import pytest

from walklab import io as wio
from walklab.cli import main


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_evolve_period_sixteen_returns_to_start(tmp_path):
    start = tmp_path / "start.csv"
    end = tmp_path / "end.csv"
    assert main(["evolve", "--coin", "fourier", "--shift", "ms", "--size", "2",
                 "--steps", "0", "--init", "delta", "--out", str(start)]) == 0
    assert main(["evolve", "--coin", "fourier", "--shift", "ms", "--size", "2",
                 "--steps", "16", "--init", "delta", "--out", str(end)]) == 0
    a = wio.load_state(start)
    b = wio.load_state(end)
    assert np.abs(a.grid - b.grid).max() <= 1e-12


def test_evolve_zero_steps_reproduces_input_file(tmp_path):
    out = tmp_path / "state.json"
    assert main(["evolve", "--size", "4", "--steps", "0", "--init", "uniform",
                 "--format", "json", "--out", str(out)]) == 0
    state = wio.load_state(out)
    roundtrip = tmp_path / "again.json"
    assert main(["evolve", "--size", "4", "--steps", "0",
                 "--init", f"file:{out}", "--format", "json",
                 "--out", str(roundtrip)]) == 0
    again = wio.load_state(roundtrip)
    assert np.array_equal(state.grid, again.grid)


def test_evolve_engines_agree(tmp_path):
    paths = {}
    for engine in ("position", "momentum"):
        p = tmp_path / f"{engine}.csv"
        code = main(["evolve", "--coin", "grover", "--shift", "ff", "--size", "4",
                     "--steps", "13", "--init", "diagonal",
                     "--alpha", "0.6,0,0,0.8,0,0,0,0",
                     "--engine", engine, "--out", str(p)])
        assert code == 0
        paths[engine] = wio.load_state(p)
    dev = np.abs(paths["position"].grid - paths["momentum"].grid).max()
    assert dev <= 1e-9


def test_evolve_step_list_writes_one_file_each(tmp_path):
    out = tmp_path / "walk.csv"
    assert main(["evolve", "--size", "3", "--steps", "0,2,5",
                 "--out", str(out)]) == 0
    for n in (0, 2, 5):
        assert (tmp_path / f"walk_step{n}.csv").exists()


def test_evolve_measure_output(tmp_path):
    out = tmp_path / "m.csv"
    assert main(["evolve", "--size", "2", "--steps", "4", "--observe", "measure",
                 "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["x1", "x2", "prob"]
    total = sum(float(r[2]) for r in rows[1:])
    assert total == pytest.approx(1.0, abs=1e-10)


def test_closed_form_sources_agree(tmp_path):
    a = tmp_path / "closed.csv"
    b = tmp_path / "evolved.csv"
    common = ["closed-form", "--coin", "grover", "--shift", "ff", "--size", "2",
              "--steps", "7", "--init", "delta"]
    assert main(common + ["--source", "closed-form", "--out", str(a)]) == 0
    assert main(common + ["--source", "evolution", "--out", str(b)]) == 0
    dev = np.abs(wio.load_state(a).grid - wio.load_state(b).grid).max()
    assert dev <= 1e-12


def test_closed_form_rejects_unsupported_combination(tmp_path):
    out = tmp_path / "x.csv"
    code = main(["closed-form", "--coin", "grover", "--init", "uniform",
                 "--size", "4", "--steps", "1", "--out", str(out)])
    assert code == 2


def test_spectrum_diagonal_line_is_constant(tmp_path):
    out = tmp_path / "spec.csv"
    assert main(["spectrum", "--coin", "fourier", "--shift", "ff",
                 "--grid", "24", "--line", "diagonal", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0][-1] == "residual"
    expected = np.exp(1j * np.pi * (1 + 4 * np.arange(4)) / 8)
    for row in rows[1:]:
        vals = [float(v) for v in row[2:10]]
        lams = np.array([complex(vals[2 * j], vals[2 * j + 1]) for j in range(4)])
        assert np.abs(lams - expected).max() <= 1e-12
        assert float(row[10]) <= 1e-9


def test_spectrum_residual_column_small_everywhere(tmp_path):
    out = tmp_path / "full.csv"
    assert main(["spectrum", "--coin", "fourier", "--shift", "ms",
                 "--grid", "12", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 1 + 12 * 12
    assert max(float(r[10]) for r in rows[1:]) <= 1e-9


def test_spectrum_grover_certificate(tmp_path):
    out = tmp_path / "g.csv"
    cert = tmp_path / "cert.json"
    assert main(["spectrum", "--coin", "grover", "--shift", "ms", "--grid", "16",
                 "--out", str(out), "--certificate", str(cert)]) == 0
    doc = json.loads(cert.read_text())
    assert doc["verdict"] == "ConstantRoots"
    roots = [complex(re, im) for re, im in doc["constant_roots"]]
    assert any(abs(r - 1) <= 1e-9 for r in roots)
    assert any(abs(r + 1) <= 1e-9 for r in roots)
    # the constant roots show up in every spectrum row
    for row in read_csv(out)[1:]:
        vals = [float(v) for v in row[2:10]]
        lams = np.array([complex(vals[2 * j], vals[2 * j + 1]) for j in range(4)])
        assert np.abs(lams - 1.0).min() <= 1e-9
        assert np.abs(lams + 1.0).min() <= 1e-9


def test_probe_localization_single_row(tmp_path):
    out = tmp_path / "probe.csv"
    assert main(["probe-localization", "--coin", "fourier", "--shift", "ms",
                 "--horizon", "1", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 2
    assert rows[1][0] == "0"
    assert float(rows[1][1]) == 1.0


def test_probe_localization_contrast(tmp_path):
    grover = tmp_path / "grover.csv"
    assert main(["probe-localization", "--coin", "grover", "--shift", "ms",
                 "--horizon", "64", "--out", str(grover)]) == 0
    rows = read_csv(grover)
    assert float(rows[-1][2]) > 0.05


def test_period_command(tmp_path):
    out = tmp_path / "period.json"
    assert main(["period", "--coin", "grover", "--shift", "ms", "--size", "2",
                 "--init", "delta", "--horizon", "32", "--format", "json",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["period"] == 4


def test_alpha_validation_exit_codes(tmp_path):
    out = tmp_path / "x.csv"
    code = main(["evolve", "--size", "2", "--steps", "1",
                 "--alpha", "2,0,0,0,0,0,0,0", "--out", str(out)])
    assert code == 2
    code = main(["evolve", "--size", "2", "--steps", "1",
                 "--alpha", "1,0,0,0,0,0", "--out", str(out)])
    assert code == 2


def test_alpha_near_unit_is_normalized(tmp_path, capsys):
    out = tmp_path / "x.csv"
    code = main(["evolve", "--size", "2", "--steps", "0",
                 "--alpha", "1.0000001,0,0,0,0,0,0,0", "--out", str(out)])
    assert code == 0
    warning = capsys.readouterr().err
    assert "normalising alpha" in warning
    state = wio.load_state(out)
    assert abs(np.sqrt(state.norm_squared) - 1.0) <= 1e-12


def test_unknown_coin_is_usage_error(tmp_path):
    code = main(["evolve", "--coin", "hadamard", "--out", str(tmp_path / "x.csv")])
    assert code == 2


def test_custom_coin_roundtrip(tmp_path):
    from walklab import random_coin, Shift
    from walklab.core import coin_to_dict

    coin_path = tmp_path / "coin.json"
    coin_path.write_text(json.dumps(coin_to_dict(random_coin(Shift.MS, seed=8))))
    out = tmp_path / "state.csv"
    code = main(["evolve", "--coin", f"custom:{coin_path}", "--size", "3",
                 "--steps", "6", "--out", str(out)])
    assert code == 0
    state = wio.load_state(out)
    assert abs(np.sqrt(state.norm_squared) - 1.0) <= 1e-10


def test_norm_guard_raises_on_drift():
    from walklab import delta_state
    from walklab.cli import NumericalBreachError, _check_norm

    good = delta_state(2, [1, 0, 0, 0])
    from walklab import Space, TorusState

    drifted = TorusState(2, Space.POSITION, good.grid * 1.5)
    with pytest.raises(NumericalBreachError):
        _check_norm(drifted, good)


def test_verify_suite_exit_zero():
    assert main(["verify", "--suite", "unitarity"]) == 0


def test_verify_unknown_suite():
    assert main(["verify", "--suite", "bogus"]) == 2


def test_plots_are_written(tmp_path):
    out = tmp_path / "probe.csv"
    assert main(["probe-localization", "--horizon", "8", "--plot",
                 "--out", str(out)]) == 0
    png = out.with_suffix(".png")
    assert png.exists() and png.stat().st_size > 0

    out2 = tmp_path / "m.csv"
    assert main(["evolve", "--size", "4", "--steps", "3", "--plot",
                 "--out", str(out2)]) == 0
    assert out2.with_suffix(".png").exists()

    out3 = tmp_path / "spec.csv"
    assert main(["spectrum", "--grid", "10", "--line", "diagonal", "--plot",
                 "--out", str(out3)]) == 0
    assert out3.with_suffix(".png").exists()


def test_outputs_deterministic_across_thread_counts(tmp_path):
    blobs = {}
    saved = os.environ.get("WALKLAB_THREADS")
    try:
        for threads in ("1", "3"):
            os.environ["WALKLAB_THREADS"] = threads
            out = tmp_path / f"spec_{threads}.csv"
            assert main(["spectrum", "--coin", "grover", "--shift", "ff",
                         "--grid", "14", "--out", str(out)]) == 0
            blobs[threads] = out.read_bytes()
    finally:
        if saved is None:
            os.environ.pop("WALKLAB_THREADS", None)
        else:
            os.environ["WALKLAB_THREADS"] = saved
    assert blobs["1"] == blobs["3"]
