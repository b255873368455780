"""Command-line front end.

Subcommands: evolve, spectrum, closed-form, verify, probe-localization,
period.  All data goes to CSV or JSON files; --plot additionally renders a
PNG figure next to the data file.  Exit codes: 0 success, 1 verification
failure, 2 usage or configuration error, 3 numerical invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import io as wio
from .core import (
    Coin,
    CoinLabel,
    Shift,
    Space,
    TorusState,
    coin_from_file,
    fourier_coin,
    grover_coin,
)
from .closed_forms import (
    InitialKind,
    InitialSpec,
    build_initial,
    psi_fourier_pi2,
    psi_grover_pi2,
    psi_ms_diagonal,
    psi_ms_uniform,
)
from .evolution import detect_period, evolve_torus, measure, return_probability_series
from .momentum import evolve_via_momentum, momentum_matrix_angles
from .spectra import (
    char_poly_numeric,
    constant_root_certificate,
    fourier_char_poly,
)

__all__ = ["main", "ConfigError", "NumericalBreachError"]

NORM_DRIFT_LIMIT = 1e-8


class ConfigError(Exception):
    """Invalid flag combination or malformed input; exit code 2."""


class NumericalBreachError(Exception):
    """A numerical invariant failed at runtime; exit code 3."""


@dataclass
class RunConfig:
    """Resolved options shared by the data-producing subcommands."""

    coin: Coin
    size: int
    init_kind: Optional[InitialKind]
    init_state: Optional[TorusState]
    alpha: np.ndarray
    out: Optional[Path]
    fmt: str
    plot: bool


def _parse_alpha(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 8:
        raise ConfigError("--alpha needs 8 comma-separated reals (re,im per component)")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise ConfigError(f"--alpha: {exc}") from exc
    alpha = np.array(
        [complex(vals[0], vals[1]), complex(vals[2], vals[3]),
         complex(vals[4], vals[5]), complex(vals[6], vals[7])]
    )
    nrm = float(np.linalg.norm(alpha))
    if abs(nrm - 1.0) > 1e-3:
        raise ConfigError(f"--alpha norm is {nrm:.6g}; must be within 1e-3 of 1")
    if abs(nrm - 1.0) > 1e-9:
        print(f"warning: normalising alpha (norm was {nrm:.12g})", file=sys.stderr)
    return alpha / nrm


def _parse_coin(coin_text: str, shift_text: str) -> Coin:
    shift = Shift(shift_text)
    if coin_text == "fourier":
        return fourier_coin(shift)
    if coin_text == "grover":
        return grover_coin(shift)
    if coin_text.startswith("custom:"):
        path = coin_text.split(":", 1)[1]
        try:
            return coin_from_file(path)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot load coin from {path!r}: {exc}") from exc
    raise ConfigError(f"unknown coin {coin_text!r} (expected fourier, grover or custom:<path>)")


def _parse_steps(text: str) -> List[int]:
    try:
        steps = [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"--steps: {exc}") from exc
    if any(s < 0 for s in steps):
        raise ConfigError("--steps values must be non-negative")
    return steps


def _config_from_args(args) -> RunConfig:
    coin = _parse_coin(args.coin, args.shift)
    alpha = _parse_alpha(getattr(args, "alpha", "1,0,0,0,0,0,0,0"))
    init_kind: Optional[InitialKind] = None
    init_state: Optional[TorusState] = None
    init = getattr(args, "init", "delta")
    if init.startswith("file:"):
        path = init.split(":", 1)[1]
        try:
            init_state = wio.load_state(path)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot load state from {path!r}: {exc}") from exc
    else:
        try:
            init_kind = InitialKind(init)
        except ValueError as exc:
            raise ConfigError(
                f"unknown init {init!r} (expected delta, uniform, diagonal or file:<path>)"
            ) from exc
    out = Path(args.out) if getattr(args, "out", None) else None
    return RunConfig(
        coin=coin,
        size=getattr(args, "size", 2),
        init_kind=init_kind,
        init_state=init_state,
        alpha=alpha,
        out=out,
        fmt=getattr(args, "format", "csv"),
        plot=getattr(args, "plot", False),
    )


def _initial_state(cfg: RunConfig) -> TorusState:
    if cfg.init_state is not None:
        if cfg.init_state.space is not Space.POSITION:
            raise ConfigError("loaded initial state must be a position-space state")
        return cfg.init_state
    if cfg.size < 2:
        raise ConfigError("--size must be at least 2")
    return build_initial(InitialSpec(cfg.init_kind, cfg.alpha), cfg.size)


def _step_path(base: Path, step: int, many: bool, suffix: Optional[str] = None) -> Path:
    ext = suffix if suffix is not None else base.suffix
    if not many:
        return base.with_suffix(ext)
    return base.with_name(f"{base.stem}_step{step}{ext}")


def _write_state(state: TorusState, path: Path, fmt: str) -> None:
    if fmt == "csv":
        wio.dump_state_csv(state, path)
    else:
        wio.dump_state_json(state, path)


def _check_norm(state: TorusState, initial: TorusState) -> None:
    drift = abs(np.sqrt(state.norm_squared) - np.sqrt(initial.norm_squared))
    if drift > NORM_DRIFT_LIMIT:
        raise NumericalBreachError(f"norm drift {drift:.3e} exceeds {NORM_DRIFT_LIMIT}")


# --------------------------------------------------------------------------
# subcommands

def cmd_evolve(args) -> int:
    cfg = _config_from_args(args)
    steps = _parse_steps(args.steps)
    initial = _initial_state(cfg)
    many = len(steps) > 1
    for n in steps:
        if args.engine == "momentum":
            state = evolve_via_momentum(initial, cfg.coin, n)
        else:
            state = evolve_torus(initial, cfg.coin, n)
        _check_norm(state, initial)
        path = _step_path(cfg.out, n, many)
        if args.observe in ("state", "both"):
            _write_state(state, path, cfg.fmt)
        if args.observe in ("measure", "both"):
            mpath = path.with_name(path.stem + "_measure" + path.suffix)
            if args.observe == "measure":
                mpath = path
            m = measure(state)
            if cfg.fmt == "csv":
                wio.dump_measure_csv(m, mpath)
            else:
                wio.dump_measure_json(m, mpath)
        if cfg.plot:
            from . import plots

            plots.save_measure_heatmap(
                measure(state), _step_path(cfg.out, n, many, ".png"),
                title=f"step {n}",
            )
    return 0


_CLOSED_FORMS = {
    (CoinLabel.FOURIER, InitialKind.UNIFORM): "uniform",
    (CoinLabel.FOURIER, InitialKind.DIAGONAL_UNIFORM): "diagonal",
    (CoinLabel.FOURIER, InitialKind.DELTA_ORIGIN): "pi2",
    (CoinLabel.GROVER, InitialKind.DELTA_ORIGIN): "pi2",
}


def _closed_form_state(cfg: RunConfig, n: int) -> TorusState:
    kind = _CLOSED_FORMS.get((cfg.coin.label, cfg.init_kind))
    if kind is None:
        raise ConfigError(
            f"no closed form for coin {cfg.coin.label.value!r} with init "
            f"{cfg.init_kind.value if cfg.init_kind else 'file'!r}"
        )
    if kind == "pi2":
        if cfg.size != 2:
            raise ConfigError("the delta-start closed forms require --size 2")
        if cfg.coin.label is CoinLabel.FOURIER:
            return psi_fourier_pi2(n, cfg.coin.shift, cfg.alpha)
        return psi_grover_pi2(n, cfg.coin.shift, cfg.alpha)
    if cfg.coin.shift is not Shift.MS:
        raise ConfigError("the uniform and diagonal closed forms require --shift ms")
    if kind == "uniform":
        return psi_ms_uniform(n, cfg.size, cfg.alpha)
    return psi_ms_diagonal(n, cfg.size, cfg.alpha)


def cmd_closed_form(args) -> int:
    cfg = _config_from_args(args)
    if cfg.init_state is not None:
        raise ConfigError("closed-form evaluation needs a named init, not a file")
    steps = _parse_steps(args.steps)
    many = len(steps) > 1
    for n in steps:
        if args.source == "closed-form":
            state = _closed_form_state(cfg, n)
        else:
            state = evolve_torus(_initial_state(cfg), cfg.coin, n)
        _write_state(state, _step_path(cfg.out, n, many), cfg.fmt)
        if cfg.plot:
            from . import plots

            plots.save_measure_heatmap(
                measure(state), _step_path(cfg.out, n, many, ".png"),
                title=f"step {n}",
            )
    return 0


def _spectrum_points(line: str, m: int):
    ts = np.arange(m)
    if line == "full":
        return [(t1, t2) for t1 in ts for t2 in ts]
    if line == "diagonal":
        return [(t, t) for t in ts]
    return [(t, (m - t) % m) for t in ts]


def cmd_spectrum(args) -> int:
    cfg = _config_from_args(args)
    m = args.grid
    if m < 2:
        raise ConfigError("--grid must be at least 2")
    coin = cfg.coin
    rows = []
    for t1, t2 in _spectrum_points(args.line, m):
        a1 = 2.0 * np.pi * t1 / m
        a2 = 2.0 * np.pi * t2 / m
        lams = np.linalg.eigvals(momentum_matrix_angles(coin, a1, a2))
        lams = lams[np.argsort(np.mod(np.angle(lams) + 1e-12, 2 * np.pi))]
        if coin.label is CoinLabel.FOURIER:
            poly = fourier_char_poly(coin.shift, a1, a2)
        else:
            poly = char_poly_numeric(coin, a1, a2)
        residual = float(np.abs(poly.evaluate(lams)).max())
        rows.append((a1, a2, lams, residual))
    if cfg.fmt == "csv":
        wio.dump_spectrum_csv(rows, cfg.out)
    else:
        import json

        doc = {
            "rows": [
                {
                    "k1": a1,
                    "k2": a2,
                    "eigenvalues": [[float(l.real), float(l.imag)] for l in lams],
                    "residual": residual,
                }
                for a1, a2, lams, residual in rows
            ]
        }
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
    if args.certificate:
        cert = constant_root_certificate(coin, grid_resolution=m)
        wio.dump_certificate_json(cert, args.certificate)
    if cfg.plot:
        from . import plots

        plots.save_spectrum_plot(rows, cfg.out.with_suffix(".png"))
    return 0


def cmd_probe_localization(args) -> int:
    cfg = _config_from_args(args)
    horizon = args.horizon
    if horizon < 1:
        raise ConfigError("--horizon must be at least 1")
    ps = return_probability_series(cfg.coin, cfg.alpha, horizon)
    if cfg.fmt == "csv":
        wio.dump_series_csv(ps, cfg.out)
    else:
        import json

        running = np.cumsum(ps) / np.arange(1, len(ps) + 1)
        doc = {
            "p": [float(p) for p in ps],
            "running_avg": [float(a) for a in running],
        }
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
    if cfg.plot:
        from . import plots

        plots.save_series_plot(ps, cfg.out.with_suffix(".png"))
    return 0


def cmd_period(args) -> int:
    cfg = _config_from_args(args)
    if args.horizon < 1:
        raise ConfigError("--horizon must be at least 1")
    report = detect_period(_initial_state(cfg), cfg.coin, args.horizon)
    if cfg.fmt == "csv":
        wio.dump_period_csv(report, cfg.out)
    else:
        wio.dump_period_json(report, cfg.out)
    return 0


def cmd_verify(args) -> int:
    from . import acceptance

    try:
        results = acceptance.run_suite(args.suite)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    width = max(len(r.description) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"C{r.cid:>2}  {status}  {r.description:<{width}}  {r.detail}")
        failures += 0 if r.ok else 1
    if failures:
        print(f"{failures} criterion(s) failed", file=sys.stderr)
        return 1
    return 0


# --------------------------------------------------------------------------
# parser

def _add_coin_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--coin", default="fourier",
                   help="fourier, grover, or custom:<json-path> (default fourier)")
    p.add_argument("--shift", choices=[s.value for s in Shift], default="ms")


def _add_init_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--size", type=int, default=2, metavar="N",
                   help="torus side length (default 2)")
    p.add_argument("--init", default="delta",
                   help="delta, uniform, diagonal, or file:<path> (default delta)")
    p.add_argument("--alpha", default="1,0,0,0,0,0,0,0",
                   help="internal state as re1,im1,...,re4,im4 (default (1,0,0,0))")


def _add_out_opts(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--out", required=required, help="output file path")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--plot", action="store_true",
                   help="render a PNG figure next to the output file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walklab",
        description="Coined quantum walks on the torus and the plane: "
                    "evolution, spectra, closed forms and localization probes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="run the walk and dump states/measures")
    _add_coin_opts(p)
    _add_init_opts(p)
    p.add_argument("--steps", default="1",
                   help="step count, or comma-separated list of step counts")
    p.add_argument("--engine", choices=["position", "momentum"], default="position")
    p.add_argument("--observe", choices=["state", "measure", "both"], default="state")
    _add_out_opts(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("closed-form", help="evaluate a closed-form state")
    _add_coin_opts(p)
    _add_init_opts(p)
    p.add_argument("--steps", default="1")
    p.add_argument("--source", choices=["closed-form", "evolution"],
                   default="closed-form",
                   help="produce the state from the closed form or from evolution")
    _add_out_opts(p)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("spectrum", help="eigenvalue surfaces over a momentum grid")
    _add_coin_opts(p)
    p.add_argument("--grid", type=int, default=32, metavar="M",
                   help="momentum grid resolution (default 32)")
    p.add_argument("--line", choices=["full", "diagonal", "antidiagonal"],
                   default="full", help="restrict the sweep to a momentum line")
    p.add_argument("--certificate", default=None, metavar="PATH",
                   help="also write the constant-root certificate JSON")
    _add_out_opts(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("probe-localization",
                       help="return-probability series at the origin of the plane")
    _add_coin_opts(p)
    p.add_argument("--alpha", default="1,0,0,0,0,0,0,0")
    p.add_argument("--horizon", type=int, default=64)
    _add_out_opts(p)
    p.set_defaults(func=cmd_probe_localization)

    p = sub.add_parser("period", help="detect the walk period up to a horizon")
    _add_coin_opts(p)
    _add_init_opts(p)
    p.add_argument("--horizon", type=int, default=64)
    _add_out_opts(p)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--suite", default="all",
                   help="all, pi2, closed-forms, spectra, localization, engine, "
                        "or unitarity")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalBreachError as exc:
        print(f"numerical invariant breached: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
