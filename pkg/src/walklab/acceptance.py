"""Acceptance criteria for the whole toolkit, one callable per criterion.

Every criterion is deterministic (fixed seeds) and returns a pass/fail flag
with a one-line numeric summary, so the same registry backs both the
``walklab verify`` command and the test suite.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import numpy as np

from .core import (
    Shift,
    Space,
    TorusState,
    delta_state,
    fourier_coin,
    fourier_coin_ff,
    fourier_coin_ms,
    grover_coin,
    random_coin,
)
from .closed_forms import (
    InitialKind,
    InitialSpec,
    build_initial,
    psi_fourier_pi2,
    psi_grover_pi2,
    psi_ms_diagonal,
    psi_ms_diagonal_parts,
    psi_ms_uniform,
)
from .evolution import detect_period, evolve_torus, return_probability_series, step_torus
from .momentum import eigensystem, evolve_via_momentum, momentum_matrix
from .spectra import (
    SpecialLine,
    Verdict,
    constant_root_certificate,
    eig_ff_special,
    eig_ms_special,
    fourier_char_poly,
    real_imag_residual,
)

__all__ = ["CriterionResult", "CRITERIA", "SUITES", "run_criteria", "run_suite"]


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    description: str
    ok: bool
    detail: str


def _random_alpha(rng) -> np.ndarray:
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    return a / np.linalg.norm(a)


def _random_state(rng, n_side: int) -> TorusState:
    g = rng.normal(size=(n_side, n_side, 4)) + 1j * rng.normal(size=(n_side, n_side, 4))
    g /= np.linalg.norm(g)
    return TorusState(n_side, Space.POSITION, g)


_GENERIC_ALPHA = np.array([1.0, 2.0j, -0.5, 0.3 + 0.7j])
_GENERIC_ALPHA /= np.linalg.norm(_GENERIC_ALPHA)


# --------------------------------------------------------------------------

def c1_fourier_pi2_tables() -> Tuple[bool, str]:
    """pi_2^2 Fourier tables match evolution for n in 0..31, tol 1e-11."""
    rng = np.random.default_rng(101)
    worst = 0.0
    for shift in (Shift.MS, Shift.FF):
        coin = fourier_coin(shift)
        for _ in range(20):
            alpha = _random_alpha(rng)
            state = delta_state(2, alpha)
            for n in range(32):
                dev = np.abs(psi_fourier_pi2(n, shift, alpha).grid - state.grid).max()
                worst = max(worst, float(dev))
                state = step_torus(state, coin)
    return worst <= 1e-11, f"max deviation {worst:.3e} (tol 1e-11)"


def c2_grover_pi2_tables() -> Tuple[bool, str]:
    """pi_2^2 Grover tables match evolution for n in 0..15 and have period 4."""
    rng = np.random.default_rng(102)
    worst = 0.0
    worst_period = 0.0
    for shift in (Shift.MS, Shift.FF):
        coin = grover_coin(shift)
        for _ in range(20):
            alpha = _random_alpha(rng)
            states = [delta_state(2, alpha)]
            for _ in range(20):
                states.append(step_torus(states[-1], coin))
            for n in range(16):
                dev = np.abs(psi_grover_pi2(n, shift, alpha).grid - states[n].grid).max()
                worst = max(worst, float(dev))
                pdev = np.abs(states[n + 4].grid - states[n].grid).max()
                worst_period = max(worst_period, float(pdev))
    ok = worst <= 1e-11 and worst_period <= 1e-12
    return ok, f"max deviation {worst:.3e} (tol 1e-11), period residual {worst_period:.3e} (tol 1e-12)"


def c3_period_detection() -> Tuple[bool, str]:
    """detect_period: 16 for Fourier MS/FF, 4 for Grover MS/FF (horizon 64)."""
    expected = {("fourier", Shift.MS): 16, ("fourier", Shift.FF): 16,
                ("grover", Shift.MS): 4, ("grover", Shift.FF): 4}
    failures = []
    found = {}
    for (family, shift), want in expected.items():
        coin = fourier_coin(shift) if family == "fourier" else grover_coin(shift)
        for alpha in (np.array([1.0, 0, 0, 0]), _GENERIC_ALPHA):
            report = detect_period(delta_state(2, alpha), coin, horizon=64)
            found[(family, shift.value)] = report.period
            if report.period != want:
                failures.append(f"{family}/{shift.value}: got {report.period}, want {want}")
    detail = ", ".join(f"{k[0]}/{k[1]}={v}" for k, v in found.items())
    return not failures, detail if not failures else "; ".join(failures)


def c4_uniform_closed_form() -> Tuple[bool, str]:
    """Uniform-state closed form: matches evolution (1e-12) and has period 4."""
    rng = np.random.default_rng(104)
    coin = fourier_coin_ms()
    worst = 0.0
    worst_period = 0.0
    for n_side in range(2, 9):
        for _ in range(5):
            alpha = _random_alpha(rng)
            state = build_initial(InitialSpec(InitialKind.UNIFORM, alpha), n_side)
            for n in range(16):
                closed = psi_ms_uniform(n, n_side, alpha)
                worst = max(worst, float(np.abs(closed.grid - state.grid).max()))
                again = psi_ms_uniform(n + 4, n_side, alpha)
                worst_period = max(worst_period, float(np.abs(again.grid - closed.grid).max()))
                state = step_torus(state, coin)
    ok = worst <= 1e-12 and worst_period <= 1e-12
    return ok, f"max deviation {worst:.3e} (tol 1e-12), period residual {worst_period:.3e}"


def c5_diagonal_closed_form() -> Tuple[bool, str]:
    """Diagonal-state closed form matches evolution (1e-11); trapped support."""
    rng = np.random.default_rng(105)
    coin = fourier_coin_ms()
    worst = 0.0
    support_ok = True
    for n_side in range(2, 9):
        for _ in range(3):
            alpha = _random_alpha(rng)
            state = build_initial(InitialSpec(InitialKind.DIAGONAL_UNIFORM, alpha), n_side)
            for n in range(33):
                closed = psi_ms_diagonal(n, n_side, alpha)
                worst = max(worst, float(np.abs(closed.grid - state.grid).max()))
                trapped, _ = psi_ms_diagonal_parts(n, n_side, alpha)
                x1, x2 = np.meshgrid(np.arange(n_side), np.arange(n_side), indexing="ij")
                s = (x1 + x2) % n_side
                allowed = (s == 0) | (s == (1 % n_side)) | (s == ((-1) % n_side))
                if np.abs(trapped.grid[~allowed]).max(initial=0.0) > 0.0:
                    support_ok = False
                state = step_torus(state, coin)
    ok = worst <= 1e-11 and support_ok
    return ok, f"max deviation {worst:.3e} (tol 1e-11), trapped support on s in {{-1,0,1}}: {support_ok}"


def c6_spectral_grid() -> Tuple[bool, str]:
    """32x32 grid: eigenvalues satisfy the quartic (1e-9) and x/y relation (1e-8)."""
    m = 32
    worst_poly = 0.0
    worst_rel = 0.0
    for shift in (Shift.MS, Shift.FF):
        coin = fourier_coin(shift)
        for k1 in range(m):
            for k2 in range(m):
                es = eigensystem(momentum_matrix(coin, k1, k2, m))
                a1 = 2 * np.pi * k1 / m
                a2 = 2 * np.pi * k2 / m
                poly = fourier_char_poly(shift, a1, a2)
                worst_poly = max(worst_poly, float(np.abs(poly.evaluate(es.eigenvalues)).max()))
                for lam in es.eigenvalues:
                    worst_rel = max(worst_rel, real_imag_residual(poly, shift, complex(lam)))
    ok = worst_poly <= 1e-9 and worst_rel <= 1e-8
    return ok, f"max poly residual {worst_poly:.3e} (tol 1e-9), max x/y residual {worst_rel:.3e} (tol 1e-8)"


def c7_closed_form_eigenpairs() -> Tuple[bool, str]:
    """Closed-form eigenpairs satisfy ||Uv - lv|| <= 1e-9 for N in {2,4,8,16}."""
    worst = 0.0
    roots_dev = 0.0
    expected_roots = np.sort(np.exp(1j * np.pi * (1 + 4 * np.arange(4)) / 8))
    for n_side in (2, 4, 8, 16):
        coin_ms = fourier_coin_ms()
        coin_ff = fourier_coin_ff()
        for k in range(n_side):
            cases = [
                (eig_ms_special(SpecialLine.DIAGONAL, k, n_side),
                 momentum_matrix(coin_ms, k, k, n_side)),
                (eig_ff_special(SpecialLine.DIAGONAL, k, n_side),
                 momentum_matrix(coin_ff, k, k, n_side)),
                (eig_ff_special(SpecialLine.ANTI_DIAGONAL, k, n_side),
                 momentum_matrix(coin_ff, k, (n_side - k) % n_side, n_side)),
            ]
            if k == 0:
                cases.append((eig_ms_special(SpecialLine.ORIGIN, 0, n_side),
                              momentum_matrix(coin_ms, 0, 0, n_side)))
            for es, mm in cases:
                for j in range(4):
                    v = es.eigenvectors[:, j]
                    worst = max(worst, float(np.abs(mm.m @ v - es.eigenvalues[j] * v).max()))
            ff_diag = np.sort(cases[1][0].eigenvalues)
            roots_dev = max(roots_dev, float(np.abs(ff_diag - expected_roots).max()))
    ok = worst <= 1e-9 and roots_dev <= 1e-10
    return ok, f"max pair residual {worst:.3e} (tol 1e-9), FF diagonal root deviation {roots_dev:.3e}"


def c8_localization_certificates() -> Tuple[bool, str]:
    """Certificates: Fourier has no constant root, Grover MS keeps {1, -1}."""
    problems = []
    grover_res = 0.0
    fourier_margin = np.inf
    for m in (16, 32, 64):
        for shift in (Shift.MS, Shift.FF):
            cert = constant_root_certificate(fourier_coin(shift), grid_resolution=m)
            if cert.verdict is not Verdict.NO_CONSTANT_ROOT:
                problems.append(f"fourier/{shift.value} M={m}: {cert.verdict.value}")
            for cand in cert.candidates:
                fourier_margin = min(fourier_margin, cand.max_residual)
        cert = constant_root_certificate(grover_coin(Shift.MS), grid_resolution=m)
        roots = np.array(cert.constant_roots)
        for want in (1.0, -1.0):
            if not np.any(np.abs(roots - want) <= 1e-9):
                problems.append(f"grover/ms M={m}: missing constant root {want}")
        for cand in cert.candidates:
            if cand.constant:
                grover_res = max(grover_res, cand.max_residual)
    if grover_res > 1e-10:
        problems.append(f"grover constant-root residual {grover_res:.3e} > 1e-10")
    if fourier_margin < 1e-2:
        problems.append(f"fourier rejection margin {fourier_margin:.3e} < 1e-2")
    detail = (f"grover root residual {grover_res:.3e} (tol 1e-10), "
              f"fourier rejection margin {fourier_margin:.3e} (floor 1e-2)")
    return not problems, detail if not problems else "; ".join(problems)


def c9_engine_equivalence() -> Tuple[bool, str]:
    """Momentum-space evolution equals position-space evolution to 1e-9."""
    worst = 0.0
    for seed in range(10):
        rng = np.random.default_rng(900 + seed)
        coin = random_coin(Shift.MS, seed=9000 + seed)
        for n_side in (2, 3, 4, 8, 16):
            initial = _random_state(rng, n_side)
            for n in (1, 7, 64):
                a = evolve_torus(initial, coin, n)
                b = evolve_via_momentum(initial, coin, n)
                worst = max(worst, float(np.abs(a.grid - b.grid).max()))
    return worst <= 1e-9, f"max engine deviation {worst:.3e} (tol 1e-9)"


def c10_nonlocalization_probe() -> Tuple[bool, str]:
    """Fourier return averages decay from horizon 32 to 128; Grover MS stays up."""
    alpha = np.array([1.0, 0, 0, 0])
    problems = []
    details = []
    for shift in (Shift.MS, Shift.FF):
        ps = return_probability_series(fourier_coin(shift), alpha, 128)
        avg32 = float(ps[:32].mean())
        avg128 = float(ps.mean())
        details.append(f"fourier/{shift.value} avg32={avg32:.4f} avg128={avg128:.4f}")
        if not avg128 < avg32:
            problems.append(f"fourier/{shift.value} average did not decay")
    ps = return_probability_series(grover_coin(Shift.MS), alpha, 128)
    avg128 = float(ps.mean())
    details.append(f"grover/ms avg128={avg128:.4f}")
    if not avg128 > 0.01:
        problems.append(f"grover/ms average {avg128:.4f} <= 0.01")
    return not problems, "; ".join(details if not problems else problems)


def c11_unitarity_and_determinism() -> Tuple[bool, str]:
    """Norm drift <= 1e-10 over 1000 steps at N=32; thread-count determinism."""
    rng = np.random.default_rng(411)
    worst_drift = 0.0
    for coin in (fourier_coin_ms(), grover_coin(Shift.FF), random_coin(Shift.MS, seed=77)):
        state = _random_state(rng, 32)
        state = evolve_torus(state, coin, 1000)
        worst_drift = max(worst_drift, abs(np.sqrt(state.norm_squared) - 1.0))

    from . import cli

    outputs = {}
    saved = os.environ.get("WALKLAB_THREADS")
    try:
        with tempfile.TemporaryDirectory() as tmp:
            for threads in (1, 2, 8):
                os.environ["WALKLAB_THREADS"] = str(threads)
                out = Path(tmp) / f"spec_{threads}.csv"
                cert = Path(tmp) / f"cert_{threads}.json"
                code = cli.main([
                    "spectrum", "--coin", "fourier", "--shift", "ms",
                    "--grid", "20", "--out", str(out), "--certificate", str(cert),
                ])
                if code != 0:
                    return False, f"spectrum exited {code} with {threads} threads"
                outputs[threads] = out.read_bytes() + cert.read_bytes()
    finally:
        if saved is None:
            os.environ.pop("WALKLAB_THREADS", None)
        else:
            os.environ["WALKLAB_THREADS"] = saved
    identical = outputs[1] == outputs[2] == outputs[8]
    ok = worst_drift <= 1e-10 and identical
    return ok, f"max norm drift {worst_drift:.3e} (tol 1e-10), byte-identical across threads: {identical}"


CRITERIA: Dict[str, Tuple[str, Callable[[], Tuple[bool, str]]]] = {
    "1": ("pi_2^2 Fourier tables vs evolution", c1_fourier_pi2_tables),
    "2": ("pi_2^2 Grover tables vs evolution, period 4", c2_grover_pi2_tables),
    "3": ("period detection (16 Fourier, 4 Grover)", c3_period_detection),
    "4": ("uniform-state closed form, period 4", c4_uniform_closed_form),
    "5": ("diagonal-state closed form, trapped support", c5_diagonal_closed_form),
    "6": ("spectral correctness on the momentum grid", c6_spectral_grid),
    "7": ("closed-form eigenpairs", c7_closed_form_eigenpairs),
    "8": ("localization certificates", c8_localization_certificates),
    "9": ("engine equivalence", c9_engine_equivalence),
    "10": ("non-localization probe on the plane", c10_nonlocalization_probe),
    "11": ("unitarity and determinism", c11_unitarity_and_determinism),
}

SUITES: Dict[str, List[str]] = {
    "pi2": ["1", "2", "3"],
    "closed-forms": ["4", "5"],
    "spectra": ["6", "7"],
    "localization": ["8", "10"],
    "engine": ["9"],
    "unitarity": ["11"],
    "all": list(CRITERIA.keys()),
}


def run_criteria(cids: List[str]) -> List[CriterionResult]:
    results = []
    for cid in cids:
        description, fn = CRITERIA[cid]
        ok, detail = fn()
        results.append(CriterionResult(cid=cid, description=description, ok=ok, detail=detail))
    return results


def run_suite(name: str) -> List[CriterionResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return run_criteria(SUITES[name])
