"""Characteristic polynomials, closed-form eigenpairs and the constant-root
certificate that separates localizing from non-localizing walks.

A walk localizes exactly when its momentum-space characteristic polynomial
has roots that do not depend on the momentum.  The certificate below makes
this executable: it collects the eigenvalues at one reference momentum and
tests each of them against the polynomial over a full momentum grid.  True
constant roots survive at rounding level while non-constant candidates fail
by many orders of magnitude, so the verdict is insensitive to the exact
threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .core import Coin, CoinLabel, Shift, fourier_coin
from .momentum import EigenSystem, eigensystem, momentum_matrix, momentum_matrix_angles
from .parallel import run_rows

__all__ = [
    "QuarticCoeffs",
    "SpecialLine",
    "Verdict",
    "CandidateRoot",
    "LocalizationCertificate",
    "char_poly_ms",
    "char_poly_ff",
    "char_poly_numeric",
    "real_imag_residual",
    "eig_ms_special",
    "eig_ff_special",
    "derivative_residual",
    "constant_root_certificate",
    "CONSTANT_ROOT_TOL",
]

CONSTANT_ROOT_TOL = 1e-8


class SpecialLine(str, Enum):
    """Momentum subsets with closed-form eigenpairs."""

    ORIGIN = "origin"
    DIAGONAL = "diagonal"
    ANTI_DIAGONAL = "anti-diagonal"


class Verdict(str, Enum):
    NO_CONSTANT_ROOT = "NoConstantRoot"
    CONSTANT_ROOTS = "ConstantRoots"


@dataclass(frozen=True)
class QuarticCoeffs:
    """Monic quartic c4 l^4 + c3 l^3 + c2 l^2 + c1 l + c0 with |c0| = 1."""

    c4: complex
    c3: complex
    c2: complex
    c1: complex
    c0: complex

    def __post_init__(self):
        if abs(self.c4 - 1.0) > 1e-12:
            raise ValueError("leading coefficient must be 1")
        if abs(abs(self.c0) - 1.0) > 1e-10:
            raise ValueError("constant term must have unit modulus")

    def as_poly(self) -> np.ndarray:
        """Coefficients highest power first, as consumed by numpy.polyval."""
        return np.array([self.c4, self.c3, self.c2, self.c1, self.c0])

    def evaluate(self, lam):
        return np.polyval(self.as_poly(), lam)


def char_poly_ms(k1_angle: float, k2_angle: float) -> QuarticCoeffs:
    """Characteristic polynomial of the Fourier walk with moving shift."""
    a = np.cos(k1_angle) + np.sin(k1_angle) + np.cos(k2_angle) + np.sin(k2_angle)
    b = (1.0 + np.cos(k1_angle - k2_angle)) / 2.0
    return QuarticCoeffs(
        c4=1.0,
        c3=-(1 + 1j) / 2 * a,
        c2=-(1 - 1j) * b,
        c1=(1 + 1j) / 2 * a,
        c0=-1j,
    )


def char_poly_ff(k1_angle: float, k2_angle: float) -> QuarticCoeffs:
    """Characteristic polynomial of the Fourier walk with flip-flop shift."""
    c = np.cos(k1_angle) - np.cos(k2_angle)
    d = (1.0 - np.cos(k1_angle - k2_angle)) / 2.0
    return QuarticCoeffs(c4=1.0, c3=-c, c2=(1 - 1j) * d, c1=1j * c, c0=-1j)


def char_poly_numeric(coin: Coin, k1_angle: float, k2_angle: float) -> QuarticCoeffs:
    """det(l I - U(k1, k2)) expanded numerically, for arbitrary coins."""
    coeffs = np.poly(momentum_matrix_angles(coin, k1_angle, k2_angle))
    return QuarticCoeffs(*coeffs)


def fourier_char_poly(shift: Shift, k1_angle: float, k2_angle: float) -> QuarticCoeffs:
    return (
        char_poly_ms(k1_angle, k2_angle)
        if Shift(shift) is Shift.MS
        else char_poly_ff(k1_angle, k2_angle)
    )


def real_imag_residual(coeffs: QuarticCoeffs, shift: Shift, lam: complex) -> float:
    """Residual of the real/imaginary eigenvalue relation at ``lam``.

    For a unit-modulus eigenvalue x + iy of the Fourier walk the pair (x, y)
    satisfies, with the momentum functions recovered from the coefficients,

        MS:  x^2 - y^2 - 2xy + A y - B = 0
        FF:  x^2 - y^2 - 2xy - C (x - y) + D = 0

    and the returned value is the absolute amount by which ``lam`` misses it.
    """
    if abs(abs(lam) - 1.0) > 1e-8:
        raise ValueError("lambda must lie on the unit circle")
    x, y = lam.real, lam.imag
    if Shift(shift) is Shift.MS:
        a = (-2.0 * coeffs.c3 / (1 + 1j)).real
        b = (-coeffs.c2 / (1 - 1j)).real
        return abs(x * x - y * y - 2 * x * y + a * y - b)
    c = (-coeffs.c3).real
    d = (coeffs.c2 / (1 - 1j)).real
    return abs(x * x - y * y - 2 * x * y - c * (x - y) + d)


def derivative_residual(
    shift: Shift, k1_angle: float, k2_angle: float, lam: complex
) -> float:
    """|d/dk1 of the characteristic polynomial| at fixed ``lam``.

    A momentum-independent root forces this to vanish at every momentum,
    which is what the contradiction behind the certificate exploits.
    """
    if abs(abs(lam) - 1.0) > 1e-8:
        raise ValueError("lambda must lie on the unit circle")
    if Shift(shift) is Shift.MS:
        slope = -np.sin(k1_angle) + np.cos(k1_angle)
        value = (
            -(1 + 1j) / 2 * slope * lam**3
            + (1 - 1j) / 2 * np.sin(k1_angle - k2_angle) * lam**2
            + (1 + 1j) / 2 * slope * lam
        )
    else:
        value = (
            np.sin(k1_angle) * lam**3
            + (1 - 1j) / 2 * np.sin(k1_angle - k2_angle) * lam**2
            - 1j * np.sin(k1_angle) * lam
        )
    return abs(value)


# --------------------------------------------------------------------------
# closed-form eigenpairs on the special momentum subsets

def _normalized_system(pairs, fallback_indices=()) -> EigenSystem:
    pairs = list(pairs)
    lam = np.array([p[0] for p in pairs], dtype=np.complex128)
    vec = np.column_stack([p[1] / np.linalg.norm(p[1]) for p in pairs])
    return EigenSystem(lam, vec, fallback_indices=tuple(fallback_indices))


def eig_ms_special(kind: SpecialLine, k: int, n_side: int) -> EigenSystem:
    """Closed-form eigenpairs of the Fourier MS walk at (0,0) or on k1 = k2.

    The origin spectrum is {1, 1, -1, i}; on the diagonal it is
    {1, w^k, -1, i w^-k} with w = exp(2 pi i / N).
    """
    kind = SpecialLine(kind)
    if not (0 <= k < n_side):
        raise ValueError(f"k must lie in 0..{n_side - 1}")
    if kind is SpecialLine.ORIGIN:
        if k != 0:
            raise ValueError("the origin eigensystem requires k = 0")
        w_k = 1.0 + 0j
    elif kind is SpecialLine.DIAGONAL:
        w_k = np.exp(2j * np.pi * k / n_side)
    else:
        raise ValueError("Fourier MS closed forms cover the origin and the diagonal")
    pairs = [
        (1.0 + 0j, 0.5 * np.array([w_k, 1, -w_k, 1])),
        (w_k, np.array([1, 0, 1, 0]) / np.sqrt(2)),
        (-1.0 + 0j, 0.5 * np.array([w_k, -1, -w_k, -1])),
        (1j * np.conj(w_k), np.array([0, 1, 0, -1]) / np.sqrt(2)),
    ]
    return _normalized_system(pairs)


def _ff_diagonal_vector(lam: complex, w_k: complex) -> np.ndarray:
    w_nk = np.conj(w_k)
    return np.array(
        [
            w_k * (lam**2 + 1j * w_nk**2) * (lam + w_k),
            w_nk * (lam**2 + w_k**2) * (lam + w_nk),
            -w_k * (lam**2 + 1j * w_nk**2) * (lam - w_k),
            w_nk * (lam**2 + w_k**2) * (lam - w_nk),
        ]
    )


def _ff_antidiagonal_vector(lam: complex, w_k: complex, sin_k: float) -> np.ndarray:
    lam_c = np.conj(lam)
    w_nk = np.conj(w_k)
    return np.array(
        [
            (lam + 1j * sin_k) * (1 + lam * w_k),
            (lam_c + 1j * sin_k) * (1 + lam * w_nk),
            (lam + 1j * sin_k) * (1 - lam * w_nk),
            -(lam_c + 1j * sin_k) * (1 - lam * w_k),
        ]
    )


def _antidiagonal_eigenvalues(sin_k: float) -> list:
    s2 = sin_k * sin_k
    rad = np.sqrt(2.0 - s2 * s2)
    lam_a = (np.sqrt(2.0 - s2 + rad) + 1j * np.sqrt(2.0 + s2 - rad)) / 2.0
    lam_b = (np.sqrt(2.0 - s2 - rad) - 1j * np.sqrt(2.0 + s2 + rad)) / 2.0
    return [lam_a, -lam_a, lam_b, -lam_b]


def eig_ff_special(kind: SpecialLine, k: int, n_side: int) -> EigenSystem:
    """Closed-form eigenpairs of the Fourier FF walk on k1 = k2 or k2 = N - k1.

    On the diagonal the four eigenvalues are the fourth roots of i,
    independent of k.  At isolated momenta the closed-form eigenvector
    degenerates to the zero vector; those pairs fall back to the numerical
    eigensolver and are flagged through ``fallback_indices``.
    """
    kind = SpecialLine(kind)
    if not (0 <= k < n_side):
        raise ValueError(f"k must lie in 0..{n_side - 1}")
    w_k = np.exp(2j * np.pi * k / n_side)
    if kind is SpecialLine.DIAGONAL:
        k2 = k
        lams = [np.exp(1j * np.pi * (1 + 4 * j) / 8) for j in range(4)]
        vectors = [_ff_diagonal_vector(lam, w_k) for lam in lams]
    elif kind is SpecialLine.ANTI_DIAGONAL:
        k2 = (n_side - k) % n_side
        sin_k = np.sin(2.0 * np.pi * k / n_side)
        lams = _antidiagonal_eigenvalues(sin_k)
        vectors = [_ff_antidiagonal_vector(lam, w_k, sin_k) for lam in lams]
    else:
        raise ValueError("Fourier FF closed forms cover the diagonal and anti-diagonal")

    fallback = [j for j, v in enumerate(vectors) if np.linalg.norm(v) < 1e-9]
    if fallback:
        numeric = eigensystem(momentum_matrix(fourier_coin(Shift.FF), k, k2, n_side))
        for j in fallback:
            i = int(np.argmin(np.abs(numeric.eigenvalues - lams[j])))
            vectors[j] = numeric.eigenvectors[:, i].copy()
    return _normalized_system(zip(lams, vectors), fallback_indices=fallback)


# --------------------------------------------------------------------------
# constant-root certificate

@dataclass(frozen=True)
class CandidateRoot:
    """One reference eigenvalue with its worst polynomial residual on the grid."""

    value: complex
    max_residual: float
    constant: bool


@dataclass(frozen=True)
class LocalizationCertificate:
    """Outcome of the constant-root sweep for one coin.

    ``constant_roots`` lists the candidates whose characteristic-polynomial
    residual stays below the survival tolerance at every sampled momentum.
    """

    coin_label: CoinLabel
    shift: Shift
    grid_resolution: int
    constant_roots: tuple
    verdict: Verdict
    candidates: tuple = field(default=(), repr=False)


def _candidate_eigenvalues(coin: Coin, grid_resolution: int, reference) -> list:
    a1 = 2.0 * np.pi * reference[0] / grid_resolution
    a2 = 2.0 * np.pi * reference[1] / grid_resolution
    lams = np.linalg.eigvals(momentum_matrix_angles(coin, a1, a2))
    lams = lams[np.argsort(np.mod(np.angle(lams) + 1e-12, 2 * np.pi))]
    unique: list = []
    for lam in lams:
        if all(abs(lam - q) > 1e-9 for q in unique):
            unique.append(complex(lam))
    return unique


def constant_root_certificate(
    coin: Coin,
    grid_resolution: int = 32,
    reference: Sequence[int] = (1, 2),
) -> LocalizationCertificate:
    """Sweep an M x M momentum grid for momentum-independent eigenvalues.

    The candidate set is the (deduplicated) spectrum at the reference grid
    point, which is chosen off the symmetry lines so that eigenvalues that
    are only constant along a line do not slip through.
    """
    m = grid_resolution
    if m < 8:
        raise ValueError("grid resolution must be at least 8")
    candidates = _candidate_eigenvalues(coin, m, reference)
    angles = 2.0 * np.pi * np.arange(m) / m
    eye = np.eye(4)

    def row_residuals(row: int) -> np.ndarray:
        mats = momentum_matrix_angles(coin, angles[row], angles)  # (m, 4, 4)
        out = np.empty((len(candidates), m))
        for i, lam in enumerate(candidates):
            out[i] = np.abs(np.linalg.det(lam * eye - mats))
        return out.max(axis=1)

    per_row = run_rows(row_residuals, m)
    worst = np.max(np.stack(per_row, axis=0), axis=0)

    report = tuple(
        CandidateRoot(lam, float(res), bool(res <= CONSTANT_ROOT_TOL))
        for lam, res in zip(candidates, worst)
    )
    roots = tuple(c.value for c in report if c.constant)
    verdict = Verdict.CONSTANT_ROOTS if roots else Verdict.NO_CONSTANT_ROOT
    return LocalizationCertificate(
        coin_label=coin.label,
        shift=coin.shift,
        grid_resolution=m,
        constant_roots=roots,
        verdict=verdict,
        candidates=report,
    )
