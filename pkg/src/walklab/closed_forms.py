"""Exact walk states for special coins and initial conditions.

The 2x2-torus amplitudes of the Fourier and Grover walks are periodic (16
and 4 steps respectively) and are tabulated here per residue of n mod 4,
with the remaining time dependence carried by powers of i.  The uniform and
diagonal-line initial conditions of the Fourier walk with moving shift admit
closed forms for every torus size.  All of these constant tables were
validated entry by entry against direct evolution before being frozen.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Shift, Space, TorusState, delta_state, unit_amplitude4

__all__ = [
    "InitialKind",
    "InitialSpec",
    "build_initial",
    "psi_ms_uniform",
    "psi_ms_diagonal",
    "psi_ms_diagonal_parts",
    "psi_fourier_pi2",
    "psi_grover_pi2",
]


class InitialKind(str, Enum):
    DELTA_ORIGIN = "delta"
    UNIFORM = "uniform"
    DIAGONAL_UNIFORM = "diagonal"


@dataclass(frozen=True)
class InitialSpec:
    """Initial condition: a kind plus the unit internal state alpha."""

    kind: InitialKind
    alpha: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "kind", InitialKind(self.kind))
        a = unit_amplitude4(self.alpha)
        a.setflags(write=False)
        object.__setattr__(self, "alpha", a)


def build_initial(spec: InitialSpec, n_side: int) -> TorusState:
    """Construct the initial torus state described by ``spec``.

    The uniform state puts alpha/N on every site; the diagonal state puts
    alpha/sqrt(N) on the anti-diagonal x1 + x2 = 0 (mod N).
    """
    if n_side < 2:
        raise ValueError("n_side must be at least 2")
    a = spec.alpha
    if spec.kind is InitialKind.DELTA_ORIGIN:
        return delta_state(n_side, a)
    if spec.kind is InitialKind.UNIFORM:
        grid = np.broadcast_to(a / n_side, (n_side, n_side, 4)).copy()
        return TorusState(n_side, Space.POSITION, grid)
    grid = np.zeros((n_side, n_side, 4), dtype=np.complex128)
    for j in range(n_side):
        grid[j, (-j) % n_side] = a / np.sqrt(n_side)
    return TorusState(n_side, Space.POSITION, grid)


# --------------------------------------------------------------------------
# Fourier walk, moving shift, uniform initial state (any N): period 4

def psi_ms_uniform(n: int, n_side: int, alpha) -> TorusState:
    """State after n steps from the uniform initial condition (Fourier MS).

    The state stays site-independent for all time and has period 4.
    """
    if n < 0:
        raise ValueError("step count must be non-negative")
    a1, a2, a3, a4 = unit_amplitude4(alpha)
    me = (-1.0) ** n
    inn = 1j ** (n % 4)
    v = np.array(
        [
            (3 + me) * a1 + (1 - me) * a2 + (1 - me) * a3 + (1 - me) * a4,
            (1 - me) * a1 + (1 + me + 2 * inn) * a2 + (-1 + me) * a3 + (1 + me - 2 * inn) * a4,
            (1 - me) * a1 + (-1 + me) * a2 + (3 + me) * a3 + (-1 + me) * a4,
            (1 - me) * a1 + (1 + me - 2 * inn) * a2 + (-1 + me) * a3 + (1 + me + 2 * inn) * a4,
        ]
    ) / (4.0 * n_side)
    grid = np.broadcast_to(v, (n_side, n_side, 4)).copy()
    return TorusState(n_side, Space.POSITION, grid)


# --------------------------------------------------------------------------
# Fourier walk, moving shift, diagonal-line initial state (any N)

def _diagonal_term_vectors(n: int, alpha) -> tuple:
    a1, a2, a3, a4 = alpha
    me = (-1.0) ** n
    inn = 1j ** (n % 4)
    trapped = [
        # offset 0 on s = (x1 + x2) mod N
        (0, (1 + me) * np.array([a1 - a3, a2 + a4, -(a1 - a3), a2 + a4])),
        # offset -1; the parity factor here is 1 - (-1)^n, validated against
        # direct evolution (n = 0 support would otherwise leak off s = 0)
        (-1, (1 - me) * np.array([a2 + a4, 0, -(a2 + a4), 0])),
        (1, (1 - me) * np.array([0, a1 - a3, 0, a1 - a3])),
    ]
    moving = [
        (-n, 2.0 * np.array([a1 + a3, 0, a1 + a3, 0])),
        (n, 2.0 * inn * np.array([0, a2 - a4, 0, -(a2 - a4)])),
    ]
    return trapped, moving


def _accumulate_diagonal(terms, n_side: int) -> np.ndarray:
    x1, x2 = np.meshgrid(np.arange(n_side), np.arange(n_side), indexing="ij")
    s = (x1 + x2) % n_side
    grid = np.zeros((n_side, n_side, 4), dtype=np.complex128)
    for offset, vec in terms:
        grid[s == (offset % n_side)] += vec
    return grid / (4.0 * np.sqrt(n_side))


def psi_ms_diagonal(n: int, n_side: int, alpha) -> TorusState:
    """State after n steps from the diagonal-line initial condition.

    The result splits into a component trapped near x1 + x2 = 0 (mod N) and
    two components sliding along the anti-diagonals at speed one; see
    :func:`psi_ms_diagonal_parts` for the split itself.
    """
    trapped, moving = psi_ms_diagonal_parts(n, n_side, alpha)
    return TorusState(n_side, Space.POSITION, trapped.grid + moving.grid)


def psi_ms_diagonal_parts(n: int, n_side: int, alpha) -> tuple:
    """(trapped, moving) components of :func:`psi_ms_diagonal`.

    The trapped part is supported on the anti-diagonals s in {-1, 0, 1}
    (mod N) only; the moving part on s = -n and s = n.
    """
    if n < 0:
        raise ValueError("step count must be non-negative")
    a = unit_amplitude4(alpha)
    trapped_terms, moving_terms = _diagonal_term_vectors(n, a)
    trapped = TorusState(n_side, Space.POSITION, _accumulate_diagonal(trapped_terms, n_side))
    moving = TorusState(n_side, Space.POSITION, _accumulate_diagonal(moving_terms, n_side))
    return trapped, moving


# --------------------------------------------------------------------------
# pi_2^2 amplitude tables.  Each entry maps a site to the 4x4 matrix M(k)
# with psi_n(site) = M(k) alpha, where n = 4k + r.

def _fourier_ms_site_matrices(k: int) -> dict:
    ik = 1j ** (k % 4)
    ik1 = 1j ** ((k + 1) % 4)
    return {
        0: {
            (0, 0): (1 + ik) / 2 * np.eye(4, dtype=complex),
            (1, 1): (1 - ik) / 2 * np.eye(4, dtype=complex),
        },
        1: {
            (0, 1): 0.25 * np.array([
                [1 - ik, 1 - ik, 1 - ik, 1 - ik],
                [1 - ik, 1j - ik1, -1 + ik, -1j + ik1],
                [1 + ik, -1 - ik, 1 + ik, -1 - ik],
                [1 + ik, -1j - ik1, -1 - ik, 1j + ik1],
            ]),
            (1, 0): 0.25 * np.array([
                [1 + ik, 1 + ik, 1 + ik, 1 + ik],
                [1 + ik, 1j + ik1, -1 - ik, -1j - ik1],
                [1 - ik, -1 + ik, 1 - ik, -1 + ik],
                [1 - ik, -1j + ik1, -1 + ik, 1j - ik1],
            ]),
        },
        2: {
            # row 2, column 1 is +i^k(1+i): a transcription with i^k(-1+i)
            # there fails the direct-evolution oracle at every n = 4k + 2
            (0, 0): 0.25 * np.array([
                [2, ik * (1 + 1j), 0, -ik * (-1 + 1j)],
                [ik * (1 + 1j), 0, -ik * (-1 + 1j), 2],
                [0, ik * (-1 + 1j), 2, -ik * (1 + 1j)],
                [ik * (-1 + 1j), 2, -ik * (1 + 1j), 0],
            ]),
            (1, 1): 0.25 * np.array([
                [2, -ik * (1 + 1j), 0, ik * (-1 + 1j)],
                [-ik * (1 + 1j), 0, ik * (-1 + 1j), 2],
                [0, -ik * (-1 + 1j), 2, ik * (1 + 1j)],
                [-ik * (-1 + 1j), 2, ik * (1 + 1j), 0],
            ]),
        },
        3: {
            (0, 1): 0.25 * np.array([
                [1 - ik1, 1 - ik1, 1 + ik1, 1 + ik1],
                [1 - ik1, -1j - ik, -1 - ik1, 1j - ik],
                [1 - ik1, -1 + ik1, 1 + ik1, -1 - ik1],
                [1 - ik1, 1j + ik, -1 - ik1, -1j + ik],
            ]),
            (1, 0): 0.25 * np.array([
                [1 + ik1, 1 + ik1, 1 - ik1, 1 - ik1],
                [1 + ik1, -1j + ik, -1 + ik1, 1j + ik],
                [1 + ik1, -1 - ik1, 1 - ik1, -1 + ik1],
                [1 + ik1, 1j - ik, -1 + ik1, -1j - ik],
            ]),
        },
    }


def _fourier_ff_site_matrices(k: int) -> dict:
    ik = 1j ** (k % 4)
    ik1 = 1j ** ((k + 1) % 4)
    mk = (-1.0) ** k
    mk1 = (-1.0) ** (k + 1)
    diag0 = 2 * ik + 1 + mk
    diag1 = 2 * ik - (1 + mk)
    return {
        0: {
            (0, 0): 0.25 * np.array([
                [diag0, 0, -1 + mk, 0],
                [0, diag0, 0, 1 - mk],
                [-1 + mk, 0, diag0, 0],
                [0, 1 - mk, 0, diag0],
            ]),
            (1, 1): 0.25 * np.array([
                [diag1, 0, 1 - mk, 0],
                [0, diag1, 0, -(1 - mk)],
                [1 - mk, 0, diag1, 0],
                [0, -(1 - mk), 0, diag1],
            ]),
        },
        1: {
            (0, 1): 0.25 * np.array([
                [-1 + ik, mk1 * 1j + ik1, 1 - ik, mk * 1j - ik1],
                [mk1 + ik, -1 + ik, mk1 + ik, -1 + ik],
                [1 + ik, mk1 * 1j - ik1, -1 - ik, mk * 1j + ik1],
                [mk + ik, -1 - ik, mk + ik, -1 - ik],
            ]),
            (1, 0): 0.25 * np.array([
                [1 + ik, mk * 1j + ik1, -1 - ik, mk1 * 1j - ik1],
                [mk + ik, 1 + ik, mk + ik, 1 + ik],
                [-1 + ik, mk * 1j - ik1, 1 - ik, mk1 * 1j + ik1],
                [mk1 + ik, 1 - ik, mk1 + ik, 1 - ik],
            ]),
        },
        2: {
            (0, 0): 0.25 * np.array([
                [1 + mk * 1j, 2 * ik1, -1 + mk * 1j, 0],
                [2 * ik, 1 + mk * 1j, 0, 1 - mk * 1j],
                [-1 + mk * 1j, 0, 1 + mk * 1j, -2 * ik1],
                [0, 1 - mk * 1j, -2 * ik, 1 + mk * 1j],
            ]),
            (1, 1): 0.25 * np.array([
                [-1 - mk * 1j, 2 * ik1, 1 - mk * 1j, 0],
                [2 * ik, -1 - mk * 1j, 0, -1 + mk * 1j],
                [1 - mk * 1j, 0, -1 - mk * 1j, -2 * ik1],
                [0, -1 + mk * 1j, -2 * ik, -1 - mk * 1j],
            ]),
        },
        3: {
            (0, 1): 0.25 * np.array([
                [-1 + ik1, mk + ik1, 1 + ik1, mk1 + ik1],
                [mk1 * 1j + ik, -1 + ik1, mk1 * 1j - ik, -1 - ik1],
                [1 - ik1, mk + ik1, -1 - ik1, mk1 + ik1],
                [mk * 1j - ik, -1 + ik1, mk * 1j + ik, -1 - ik1],
            ]),
            (1, 0): 0.25 * np.array([
                [1 + ik1, mk1 + ik1, -1 + ik1, mk + ik1],
                [mk * 1j + ik, 1 + ik1, mk * 1j - ik, 1 - ik1],
                [-1 - ik1, mk1 + ik1, 1 - ik1, mk + ik1],
                [mk1 * 1j - ik, 1 + ik1, mk1 * 1j + ik, 1 - ik1],
            ]),
        },
    }


def psi_fourier_pi2(n: int, shift: Shift, alpha) -> TorusState:
    """Fourier-walk state on the 2x2 torus after n steps from a delta start.

    Assembled from the per-residue tables; the full state has period 16.
    """
    if n < 0:
        raise ValueError("step count must be non-negative")
    a = unit_amplitude4(alpha)
    k, r = divmod(n, 4)
    tables = (
        _fourier_ms_site_matrices(k)
        if Shift(shift) is Shift.MS
        else _fourier_ff_site_matrices(k)
    )
    grid = np.zeros((2, 2, 4), dtype=np.complex128)
    for site, mat in tables[r].items():
        grid[site] = mat @ a
    return TorusState(2, Space.POSITION, grid)


def _grover_site_matrices(n: int, shift: Shift) -> dict:
    inn = 1j ** (n % 4)
    inn1 = 1j ** ((n + 1) % 4)
    even = (1 + (-1.0) ** n) / 8.0
    odd = (1 + (-1.0) ** (n + 1)) / 8.0
    m00 = even * np.array([
        [inn + 3, inn - 1, 0, 0],
        [inn - 1, inn + 3, 0, 0],
        [0, 0, inn + 3, inn - 1],
        [0, 0, inn - 1, inn + 3],
    ])
    m11 = ((1 - inn) * (1 + (-1.0) ** n) / 8.0) * np.array(
        [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]], dtype=complex
    )
    # the MS and FF walks differ on pi_2^2 only in the signs of the +-2
    # blocks at the odd-parity sites
    sgn = 1.0 if Shift(shift) is Shift.MS else -1.0
    m01 = odd * np.array([
        [0, 0, 1 + inn1, 1 + inn1],
        [0, 0, 1 + inn1, 1 + inn1],
        [1 - inn1, 1 - inn1, -2 * sgn, 2 * sgn],
        [1 - inn1, 1 - inn1, 2 * sgn, -2 * sgn],
    ])
    m10 = odd * np.array([
        [-2 * sgn, 2 * sgn, 1 - inn1, 1 - inn1],
        [2 * sgn, -2 * sgn, 1 - inn1, 1 - inn1],
        [1 + inn1, 1 + inn1, 0, 0],
        [1 + inn1, 1 + inn1, 0, 0],
    ])
    return {(0, 0): m00, (1, 1): m11, (0, 1): m01, (1, 0): m10}


def psi_grover_pi2(n: int, shift: Shift, alpha) -> TorusState:
    """Grover-walk state on the 2x2 torus after n steps from a delta start.

    The state has period 4 for either shift kind.
    """
    if n < 0:
        raise ValueError("step count must be non-negative")
    a = unit_amplitude4(alpha)
    grid = np.zeros((2, 2, 4), dtype=np.complex128)
    for site, mat in _grover_site_matrices(n, shift).items():
        grid[site] = mat @ a
    return TorusState(2, Space.POSITION, grid)
