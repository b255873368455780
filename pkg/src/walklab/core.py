"""Domain types, coin constructors and index conventions.

A walker on the torus pi_N^2 (or on a bounded window of the plane) carries a
4-component internal state.  The component-to-direction convention used by
every module in this package is

    component 1 moves in -x1,   component 2 moves in +x1,
    component 3 moves in -x2,   component 4 moves in +x2.

A coin is a 4x4 unitary together with a shift kind.  The flip-flop shift is
realised by left-multiplying the coin with the pairwise swap of the
(1,2) and (3,4) components, so a single local update rule serves both shift
kinds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Shift",
    "CoinLabel",
    "Space",
    "Coin",
    "TorusState",
    "PlaneState",
    "PAIR_SWAP",
    "UNITARITY_TOL",
    "amplitude4",
    "unit_amplitude4",
    "fourier_coin_ms",
    "fourier_coin_ff",
    "fourier_coin",
    "grover_coin",
    "custom_coin",
    "random_coin",
    "coin_from_dict",
    "coin_from_file",
    "coin_to_dict",
    "projection",
    "delta_state",
    "plane_delta",
]

UNITARITY_TOL = 1e-12

#: Pairwise swap of the (-x1,+x1) and (-x2,+x2) component partners.
PAIR_SWAP = np.array(
    [[0, 1, 0, 0],
     [1, 0, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=np.complex128,
)
PAIR_SWAP.setflags(write=False)


class Shift(str, Enum):
    """Shift kind: moving (MS) or flip-flop (FF)."""

    MS = "ms"
    FF = "ff"


class CoinLabel(str, Enum):
    FOURIER = "fourier"
    GROVER = "grover"
    CUSTOM = "custom"


class Space(str, Enum):
    """Which representation a torus state lives in."""

    POSITION = "position"
    MOMENTUM = "momentum"


def amplitude4(values) -> np.ndarray:
    """Coerce ``values`` to a finite complex 4-vector."""
    a = np.asarray(values, dtype=np.complex128)
    if a.shape != (4,):
        raise ValueError(f"amplitude must have 4 components, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValueError("amplitude components must be finite")
    return a


def unit_amplitude4(values, tol: float = 1e-12) -> np.ndarray:
    """Like :func:`amplitude4` but requires unit norm within ``tol``."""
    a = amplitude4(values)
    nrm = np.linalg.norm(a)
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"amplitude norm is {nrm!r}, expected 1 within {tol}")
    return a


def _frozen_complex(a: np.ndarray, shape: tuple) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, copy=True)
    if out.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {out.shape}")
    if not np.all(np.isfinite(out.view(np.float64))):
        raise ValueError("array entries must be finite")
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Coin:
    """A 4x4 unitary coin plus its shift kind.

    Construction validates unitarity: ``max|u u* - I|`` must not exceed
    ``UNITARITY_TOL``.
    """

    u: np.ndarray
    shift: Shift
    label: CoinLabel = CoinLabel.CUSTOM

    def __post_init__(self):
        u = _frozen_complex(self.u, (4, 4))
        dev = np.abs(u @ u.conj().T - np.eye(4)).max()
        if dev > UNITARITY_TOL:
            raise ValueError(f"coin matrix is not unitary (deviation {dev:.3e})")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "shift", Shift(self.shift))
        object.__setattr__(self, "label", CoinLabel(self.label))


@dataclass(frozen=True)
class TorusState:
    """State on the N x N torus, in position or momentum representation.

    ``grid[x1, x2]`` (or ``grid[k1, k2]``) is the complex 4-vector at that
    site.  Instances are immutable; the grid array is write-protected.
    """

    n_side: int
    space: Space
    grid: np.ndarray

    def __post_init__(self):
        if self.n_side < 1:
            raise ValueError("n_side must be positive")
        n = self.n_side
        object.__setattr__(self, "space", Space(self.space))
        object.__setattr__(self, "grid", _frozen_complex(self.grid, (n, n, 4)))

    @property
    def norm_squared(self) -> float:
        return float((np.abs(self.grid) ** 2).sum())


@dataclass(frozen=True)
class PlaneState:
    """State on a (2R+1) x (2R+1) window of the plane, centred on the origin.

    Lattice point (x1, x2) with ``|x1|, |x2| <= R`` lives at grid index
    ``(x1 + R, x2 + R)``.
    """

    window_radius: int
    grid: np.ndarray

    def __post_init__(self):
        if self.window_radius < 0:
            raise ValueError("window_radius must be non-negative")
        side = 2 * self.window_radius + 1
        object.__setattr__(self, "grid", _frozen_complex(self.grid, (side, side, 4)))

    @property
    def origin_index(self) -> int:
        return self.window_radius

    @property
    def norm_squared(self) -> float:
        return float((np.abs(self.grid) ** 2).sum())


# --------------------------------------------------------------------------
# coin constructors

def fourier_coin_ms() -> Coin:
    """The 4x4 discrete-Fourier coin with the moving shift."""
    u = 0.5 * np.array(
        [[1, 1, 1, 1],
         [1, 1j, -1, -1j],
         [1, -1, 1, -1],
         [1, -1j, -1, 1j]],
        dtype=np.complex128,
    )
    return Coin(u, Shift.MS, CoinLabel.FOURIER)


def fourier_coin_ff() -> Coin:
    """The Fourier coin composed with the flip-flop swap."""
    return Coin(PAIR_SWAP @ fourier_coin_ms().u, Shift.FF, CoinLabel.FOURIER)


def grover_coin(shift: Shift = Shift.MS) -> Coin:
    """Grover diffusion coin (2|s><s| - I, s uniform) for either shift kind."""
    u = np.full((4, 4), 0.5, dtype=np.complex128) - np.eye(4)
    if Shift(shift) is Shift.FF:
        u = PAIR_SWAP @ u
    return Coin(u, Shift(shift), CoinLabel.GROVER)


def custom_coin(u, shift: Shift) -> Coin:
    """Wrap an arbitrary unitary 4x4 matrix as a coin."""
    return Coin(np.asarray(u), Shift(shift), CoinLabel.CUSTOM)


def random_coin(shift: Shift, seed: int) -> Coin:
    """Haar-distributed random unitary coin, deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return Coin(q, Shift(shift), CoinLabel.CUSTOM)


def fourier_coin(shift: Shift) -> Coin:
    """Fourier coin for the requested shift kind."""
    return fourier_coin_ms() if Shift(shift) is Shift.MS else fourier_coin_ff()


def coin_from_dict(doc: dict) -> Coin:
    """Build a custom coin from ``{"shift": "ms"|"ff", "matrix": [[[re, im] x4] x4]}``.

    Raises ``ValueError`` for malformed documents and for non-unitary
    matrices.
    """
    try:
        shift = Shift(doc["shift"])
        rows = doc["matrix"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed coin document: {exc}") from exc
    if len(rows) != 4 or any(len(row) != 4 for row in rows):
        raise ValueError("coin matrix must be 4x4")
    u = np.empty((4, 4), dtype=np.complex128)
    for i, row in enumerate(rows):
        for j, pair in enumerate(row):
            re, im = pair
            u[i, j] = complex(re, im)
    return Coin(u, shift, CoinLabel.CUSTOM)


def coin_from_file(path) -> Coin:
    """Load a custom coin from a JSON file (see :func:`coin_from_dict`)."""
    with open(path, "r", encoding="utf-8") as fh:
        return coin_from_dict(json.load(fh))


def coin_to_dict(coin: Coin) -> dict:
    """Inverse of :func:`coin_from_dict`."""
    return {
        "shift": coin.shift.value,
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in coin.u],
    }


# --------------------------------------------------------------------------
# projections and simple state factories

def projection(j: int) -> np.ndarray:
    """Diagonal projector onto component ``j`` (1-based), j in 1..4."""
    if j not in (1, 2, 3, 4):
        raise ValueError(f"projection index must be in 1..4, got {j}")
    p = np.zeros((4, 4), dtype=np.complex128)
    p[j - 1, j - 1] = 1.0
    return p


def delta_state(n_side: int, alpha) -> TorusState:
    """Position state concentrated at the origin with internal state alpha."""
    a = amplitude4(alpha)
    grid = np.zeros((n_side, n_side, 4), dtype=np.complex128)
    grid[0, 0] = a
    return TorusState(n_side, Space.POSITION, grid)


def plane_delta(window_radius: int, alpha) -> PlaneState:
    """Plane-window state concentrated at the origin."""
    a = amplitude4(alpha)
    side = 2 * window_radius + 1
    grid = np.zeros((side, side, 4), dtype=np.complex128)
    grid[window_radius, window_radius] = a
    return PlaneState(window_radius, grid)
