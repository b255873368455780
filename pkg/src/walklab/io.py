"""CSV and JSON serialisation for states, measures, series and reports.

Floats are printed with 17 significant digits so that every file round-trips
through the matching loader without loss.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .core import Space, TorusState
from .evolution import Measure, PeriodReport
from .spectra import LocalizationCertificate

__all__ = [
    "dump_state_csv",
    "load_state_csv",
    "dump_state_json",
    "load_state_json",
    "load_state",
    "dump_measure_csv",
    "dump_measure_json",
    "dump_series_csv",
    "dump_spectrum_csv",
    "dump_certificate_json",
    "dump_period_json",
    "dump_period_csv",
]

_STATE_COLS = ["re1", "im1", "re2", "im2", "re3", "im3", "re4", "im4"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _axis_names(space: Space) -> tuple:
    return ("x1", "x2") if space is Space.POSITION else ("k1", "k2")


def dump_state_csv(state: TorusState, path) -> None:
    """Write a torus state; the header names the axes x1/x2 or k1/k2."""
    ax1, ax2 = _axis_names(state.space)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([ax1, ax2, *_STATE_COLS])
        for i in range(state.n_side):
            for j in range(state.n_side):
                amp = state.grid[i, j]
                row = [str(i), str(j)]
                for z in amp:
                    row.append(_fmt(z.real))
                    row.append(_fmt(z.imag))
                writer.writerow(row)


def load_state_csv(path) -> TorusState:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:2] == ["x1", "x2"]:
            space = Space.POSITION
        elif header[:2] == ["k1", "k2"]:
            space = Space.MOMENTUM
        else:
            raise ValueError(f"unrecognised state header: {header[:2]}")
        rows = [row for row in reader if row]
    n2 = len(rows)
    n = round(n2 ** 0.5)
    if n * n != n2:
        raise ValueError(f"state file holds {n2} rows, not a square grid")
    grid = np.zeros((n, n, 4), dtype=np.complex128)
    for row in rows:
        i, j = int(row[0]), int(row[1])
        vals = [float(v) for v in row[2:10]]
        grid[i, j] = [complex(vals[2 * c], vals[2 * c + 1]) for c in range(4)]
    return TorusState(n, space, grid)


def dump_state_json(state: TorusState, path) -> None:
    doc = {
        "n_side": state.n_side,
        "space": state.space.value,
        "grid": [
            [[[float(z.real), float(z.imag)] for z in state.grid[i, j]]
             for j in range(state.n_side)]
            for i in range(state.n_side)
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_state_json(path) -> TorusState:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    n = int(doc["n_side"])
    space = Space(doc["space"])
    grid = np.zeros((n, n, 4), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            grid[i, j] = [complex(re, im) for re, im in doc["grid"][i][j]]
    return TorusState(n, space, grid)


def load_state(path) -> TorusState:
    """Dispatch on the file suffix (.csv or .json)."""
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        return load_state_csv(path)
    if suffix == ".json":
        return load_state_json(path)
    raise ValueError(f"cannot infer state format from suffix {suffix!r}")


def dump_measure_csv(m: Measure, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x1", "x2", "prob"])
        for i in range(m.n_side):
            for j in range(m.n_side):
                writer.writerow([str(i), str(j), _fmt(m.probs[i, j])])


def dump_measure_json(m: Measure, path) -> None:
    doc = {"n_side": m.n_side, "probs": [[float(p) for p in row] for row in m.probs]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def dump_series_csv(probabilities, path) -> None:
    """Return-probability series with its running time average."""
    ps = np.asarray(probabilities, dtype=np.float64)
    running = np.cumsum(ps) / np.arange(1, len(ps) + 1)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "p_n", "running_avg"])
        for n, (p, avg) in enumerate(zip(ps, running)):
            writer.writerow([str(n), _fmt(p), _fmt(avg)])


def dump_spectrum_csv(rows, path) -> None:
    """Eigenvalue surface rows: (k1, k2, four eigenvalues, poly residual)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["k1", "k2", "re1", "im1", "re2", "im2", "re3", "im3", "re4", "im4",
             "residual"]
        )
        for a1, a2, lams, residual in rows:
            row = [_fmt(a1), _fmt(a2)]
            for lam in lams:
                row.append(_fmt(lam.real))
                row.append(_fmt(lam.imag))
            row.append(_fmt(residual))
            writer.writerow(row)


def dump_certificate_json(cert: LocalizationCertificate, path) -> None:
    doc = {
        "coin": cert.coin_label.value,
        "shift": cert.shift.value,
        "grid": cert.grid_resolution,
        "constant_roots": [[float(z.real), float(z.imag)] for z in cert.constant_roots],
        "verdict": cert.verdict.value,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _period_doc(report: PeriodReport) -> dict:
    return {
        "period": report.period,
        "horizon": report.horizon,
        "max_residual": float(report.max_residual),
    }


def dump_period_json(report: PeriodReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_period_doc(report), fh, indent=1, sort_keys=True)
        fh.write("\n")


def dump_period_csv(report: PeriodReport, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["period", "horizon", "max_residual"])
        writer.writerow(
            ["" if report.period is None else str(report.period),
             str(report.horizon), _fmt(report.max_residual)]
        )
