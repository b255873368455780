"""Position-space time evolution, probability measures and period detection.

One step of the walk sends the component-c amplitude of every site to the
neighbouring site in direction c, after mixing the components with the coin:

    psi'(x1, x2) = P1 U psi(x1+1, x2) + P2 U psi(x1-1, x2)
                 + P3 U psi(x1, x2+1) + P4 U psi(x1, x2-1)

with indices taken mod N on the torus and without wraparound on a plane
window.  The shift kind (moving or flip-flop) is baked into the coin matrix,
so the same update serves both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Coin, PlaneState, Space, TorusState, plane_delta, unit_amplitude4

__all__ = [
    "Measure",
    "PeriodReport",
    "step_torus",
    "evolve_torus",
    "step_plane",
    "evolve_plane",
    "measure",
    "time_averaged_measure",
    "return_probability_series",
    "detect_period",
    "PERIOD_TOL",
]

PERIOD_TOL = 1e-10


@dataclass(frozen=True)
class Measure:
    """Per-site probability distribution on the torus."""

    n_side: int
    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=np.float64, copy=True)
        if p.shape != (self.n_side, self.n_side):
            raise ValueError(f"probs must have shape ({self.n_side}, {self.n_side})")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def total(self) -> float:
        return float(self.probs.sum())


@dataclass(frozen=True)
class PeriodReport:
    """Result of a period search up to a finite horizon.

    ``period`` is the smallest p <= horizon with max|psi_p - psi_0| within
    tolerance, or None if no return was found.  When a period is reported,
    ``max_residual`` is the largest deviation max|psi_{m+p} - psi_m| over all
    m <= horizon - p; when none is found it is the closest approach to the
    initial state seen during the search.
    """

    period: Optional[int]
    horizon: int
    max_residual: float


def _shifted(y: np.ndarray) -> np.ndarray:
    """Torus shift of per-component amplitudes along their directions."""
    out = np.empty_like(y)
    out[:, :, 0] = np.roll(y[:, :, 0], -1, axis=0)
    out[:, :, 1] = np.roll(y[:, :, 1], 1, axis=0)
    out[:, :, 2] = np.roll(y[:, :, 2], -1, axis=1)
    out[:, :, 3] = np.roll(y[:, :, 3], 1, axis=1)
    return out


def step_torus(state: TorusState, coin: Coin) -> TorusState:
    """Advance a position-space torus state by one step.

    Norm is preserved up to rounding because the update is unitary.
    """
    if state.space is not Space.POSITION:
        raise ValueError("step_torus expects a position-space state")
    y = state.grid @ coin.u.T
    return TorusState(state.n_side, Space.POSITION, _shifted(y))


def evolve_torus(state: TorusState, coin: Coin, n: int) -> TorusState:
    """Apply ``n`` steps; ``n = 0`` returns the input state."""
    if n < 0:
        raise ValueError("step count must be non-negative")
    if state.space is not Space.POSITION:
        raise ValueError("evolve_torus expects a position-space state")
    grid = state.grid
    u_t = coin.u.T
    for _ in range(n):
        grid = _shifted(grid @ u_t)
    return TorusState(state.n_side, Space.POSITION, grid)


def _boundary_occupied(grid: np.ndarray) -> bool:
    return bool(
        np.any(grid[0]) or np.any(grid[-1]) or np.any(grid[:, 0]) or np.any(grid[:, -1])
    )


def step_plane(state: PlaneState, coin: Coin) -> PlaneState:
    """One step on the plane window, refusing if amplitude would leave it.

    The caller must supply a window large enough that the support stays at
    distance >= 1 from the boundary; anything else would silently lose norm,
    so it raises instead.
    """
    grid = state.grid
    if _boundary_occupied(grid):
        raise ValueError("state support touches the window boundary; enlarge the window")
    y = grid @ coin.u.T
    out = np.zeros_like(grid)
    out[:-1, :, 0] = y[1:, :, 0]
    out[1:, :, 1] = y[:-1, :, 1]
    out[:, :-1, 2] = y[:, 1:, 2]
    out[:, 1:, 3] = y[:, :-1, 3]
    return PlaneState(state.window_radius, out)


def evolve_plane(state: PlaneState, coin: Coin, n: int) -> PlaneState:
    if n < 0:
        raise ValueError("step count must be non-negative")
    for _ in range(n):
        state = step_plane(state, coin)
    return state


def measure(state: TorusState) -> Measure:
    """Per-site probabilities ||psi(x)||^2 of a position-space state."""
    if state.space is not Space.POSITION:
        raise ValueError("measure expects a position-space state")
    return Measure(state.n_side, (np.abs(state.grid) ** 2).sum(axis=2))


def time_averaged_measure(initial: TorusState, coin: Coin, horizon: int) -> Measure:
    """Average of the per-step measures over steps 0 .. horizon-1."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    acc = np.zeros((initial.n_side, initial.n_side))
    state = initial
    for _ in range(horizon):
        acc += (np.abs(state.grid) ** 2).sum(axis=2)
        state = step_torus(state, coin)
    return Measure(initial.n_side, acc / horizon)


def return_probability_series(coin: Coin, alpha, horizon: int) -> np.ndarray:
    """Return probabilities p_0 .. p_{horizon-1} at the origin of the plane.

    The walk starts from a delta state with internal state ``alpha`` on a
    window of radius horizon + 1, which the light cone cannot reach.
    """
    a = unit_amplitude4(alpha, tol=1e-9)
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    state = plane_delta(horizon + 1, a)
    c = state.origin_index
    ps = np.empty(horizon)
    for n in range(horizon):
        ps[n] = (np.abs(state.grid[c, c]) ** 2).sum()
        if n + 1 < horizon:
            state = step_plane(state, coin)
    return ps


def detect_period(
    initial: TorusState, coin: Coin, horizon: int, tol: float = PERIOD_TOL
) -> PeriodReport:
    """Smallest p <= horizon with psi_p = psi_0 within ``tol`` (max norm).

    A candidate return is accepted only if psi_{m+p} = psi_m holds for every
    m <= horizon - p, which unitarity guarantees in exact arithmetic but is
    verified here to keep the report honest against numerical drift.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    base = initial.grid
    state = initial
    closest = np.inf
    for p in range(1, horizon + 1):
        state = step_torus(state, coin)
        residual = float(np.abs(state.grid - base).max())
        closest = min(closest, residual)
        if residual <= tol:
            worst = _verify_period(initial, coin, p, horizon)
            if worst <= tol:
                return PeriodReport(period=p, horizon=horizon, max_residual=worst)
    return PeriodReport(period=None, horizon=horizon, max_residual=closest)


def _verify_period(initial: TorusState, coin: Coin, p: int, horizon: int) -> float:
    lead = evolve_torus(initial, coin, p)
    lag = initial
    worst = 0.0
    for _ in range(horizon - p + 1):
        worst = max(worst, float(np.abs(lead.grid - lag.grid).max()))
        lead = step_torus(lead, coin)
        lag = step_torus(lag, coin)
    return worst
