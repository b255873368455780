"""Fourier transform, per-momentum evolution matrices and spectral powers.

The transform convention is

    psi_hat(k1, k2) = (1/N) sum_x omega^(-(k1 x1 + k2 x2)) psi(x1, x2),

with omega = exp(2 pi i / N), which is unitary on the N x N grid.  In
momentum space one step of the walk acts site by site through the 4x4
unitary  diag(omega^k1, omega^-k1, omega^k2, omega^-k2) . U,  so n steps
reduce to independent matrix powers, evaluated here through the spectral
decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg

from .core import Coin, Space, TorusState, UNITARITY_TOL

__all__ = [
    "MomentumMatrix",
    "EigenSystem",
    "dft_forward",
    "dft_inverse",
    "momentum_matrix",
    "momentum_matrix_angles",
    "eigensystem",
    "spectral_power",
    "evolve_via_momentum",
    "RECONSTRUCTION_TOL",
]

RECONSTRUCTION_TOL = 1e-10


@dataclass(frozen=True)
class MomentumMatrix:
    """The 4x4 one-step unitary at a single momentum grid point."""

    k1: int
    k2: int
    n_side: int
    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=np.complex128, copy=True)
        if m.shape != (4, 4):
            raise ValueError("momentum matrix must be 4x4")
        dev = np.abs(m @ m.conj().T - np.eye(4)).max()
        if dev > UNITARITY_TOL:
            raise ValueError(f"momentum matrix is not unitary (deviation {dev:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class EigenSystem:
    """Unit-modulus eigenvalues with orthonormal eigenvectors (as columns).

    ``fallback_indices`` marks eigenpairs that a closed-form construction
    could not produce and that were recomputed numerically.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    fallback_indices: tuple = ()

    def __post_init__(self):
        lam = np.array(self.eigenvalues, dtype=np.complex128, copy=True)
        vec = np.array(self.eigenvectors, dtype=np.complex128, copy=True)
        if lam.shape != (4,) or vec.shape != (4, 4):
            raise ValueError("expected 4 eigenvalues and a 4x4 eigenvector matrix")
        lam.setflags(write=False)
        vec.setflags(write=False)
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "eigenvectors", vec)

    def reconstruct(self) -> np.ndarray:
        """Sum of lambda_i |v_i><v_i|."""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def dft_forward(state: TorusState) -> TorusState:
    """Position -> momentum transform (norm preserving)."""
    if state.space is not Space.POSITION:
        raise ValueError("dft_forward expects a position-space state")
    grid = np.fft.fft2(state.grid, axes=(0, 1)) / state.n_side
    return TorusState(state.n_side, Space.MOMENTUM, grid)


def dft_inverse(state: TorusState) -> TorusState:
    """Momentum -> position transform, inverse of :func:`dft_forward`."""
    if state.space is not Space.MOMENTUM:
        raise ValueError("dft_inverse expects a momentum-space state")
    grid = np.fft.ifft2(state.grid, axes=(0, 1)) * state.n_side
    return TorusState(state.n_side, Space.POSITION, grid)


def momentum_matrix(coin: Coin, k1: int, k2: int, n_side: int) -> MomentumMatrix:
    """One-step unitary at integer momentum (k1, k2) on the N-torus."""
    if not (0 <= k1 < n_side and 0 <= k2 < n_side):
        raise ValueError(f"momentum indices must lie in 0..{n_side - 1}")
    a = 2.0 * np.pi / n_side
    m = momentum_matrix_angles(coin, a * k1, a * k2)
    return MomentumMatrix(k1, k2, n_side, m)


def momentum_matrix_angles(coin: Coin, k1_angle, k2_angle) -> np.ndarray:
    """One-step unitary at continuous momentum angles; broadcasts over arrays."""
    a1, a2 = np.broadcast_arrays(
        np.asarray(k1_angle, dtype=np.float64), np.asarray(k2_angle, dtype=np.float64)
    )
    phases = np.stack(
        [np.exp(1j * a1), np.exp(-1j * a1), np.exp(1j * a2), np.exp(-1j * a2)],
        axis=-1,
    )
    return phases[..., :, None] * coin.u


def _ordered(lam: np.ndarray, vec: np.ndarray):
    """Sort eigenpairs by principal argument in [0, 2pi).

    Degenerate ties are broken lexicographically on the rounded eigenvector
    entries so the ordering is deterministic.
    """
    ang = np.mod(np.angle(lam) + 1e-12, 2.0 * np.pi)
    keys = []
    for i in range(len(lam)):
        entries = tuple(
            (round(float(z.real), 9), round(float(z.imag), 9)) for z in vec[:, i]
        )
        keys.append((round(float(ang[i]), 9), entries))
    order = sorted(range(len(lam)), key=lambda i: keys[i])
    return lam[order], vec[:, order]


def eigensystem(m: Union[MomentumMatrix, np.ndarray]) -> EigenSystem:
    """Full eigendecomposition of a unitary 4x4 matrix.

    The Schur form of a unitary matrix is diagonal, which yields an
    orthonormal eigenbasis even inside degenerate eigenspaces.  Raises
    ``ValueError`` when the input is not unitary (the reconstruction would
    not converge).
    """
    mat = m.m if isinstance(m, MomentumMatrix) else np.asarray(m, dtype=np.complex128)
    if mat.shape != (4, 4):
        raise ValueError("eigensystem expects a 4x4 matrix")
    dev = np.abs(mat @ mat.conj().T - np.eye(4)).max()
    if dev > UNITARITY_TOL:
        raise ValueError(f"matrix is not unitary (deviation {dev:.3e})")
    t, z = scipy.linalg.schur(mat, output="complex")
    lam, vec = _ordered(np.diag(t).copy(), z)
    es = EigenSystem(lam, vec)
    rec_dev = np.abs(es.reconstruct() - mat).max()
    if rec_dev > RECONSTRUCTION_TOL:
        raise ValueError(f"spectral reconstruction failed (deviation {rec_dev:.3e})")
    return es


def spectral_power(es: EigenSystem, n: int) -> np.ndarray:
    """The matrix sum_i lambda_i^n |v_i><v_i| (equals the n-th matrix power)."""
    if n < 0:
        raise ValueError("step count must be non-negative")
    return (es.eigenvectors * es.eigenvalues**n) @ es.eigenvectors.conj().T


def evolve_via_momentum(initial: TorusState, coin: Coin, n: int) -> TorusState:
    """Evolve n steps through the momentum representation.

    Agrees with the position-space evolution up to rounding; useful both as a
    fast path for many steps and as an independent cross-check of either
    implementation.
    """
    if n < 0:
        raise ValueError("step count must be non-negative")
    hat = dft_forward(initial)
    ns = initial.n_side
    out = np.empty_like(hat.grid)
    for k1 in range(ns):
        for k2 in range(ns):
            es = eigensystem(momentum_matrix(coin, k1, k2, ns))
            out[k1, k2] = spectral_power(es, n) @ hat.grid[k1, k2]
    return dft_inverse(TorusState(ns, Space.MOMENTUM, out))
