"""walklab: discrete-time coined quantum walks on the torus and the plane.

The package simulates 4-component coined walks with moving and flip-flop
shifts, evaluates the known closed-form states for the Fourier and Grover
coins, diagonalises the momentum-space evolution, and certifies numerically
which walks have momentum-independent eigenvalues (the localization
criterion).  A command-line front end exposes the same operations and emits
CSV/JSON plus optional figures.
"""

from .core import (
    Coin,
    CoinLabel,
    PlaneState,
    Shift,
    Space,
    TorusState,
    amplitude4,
    coin_from_dict,
    coin_from_file,
    custom_coin,
    delta_state,
    fourier_coin,
    fourier_coin_ff,
    fourier_coin_ms,
    grover_coin,
    plane_delta,
    projection,
    random_coin,
    unit_amplitude4,
)
from .evolution import (
    Measure,
    PeriodReport,
    detect_period,
    evolve_plane,
    evolve_torus,
    measure,
    return_probability_series,
    step_plane,
    step_torus,
    time_averaged_measure,
)
from .momentum import (
    EigenSystem,
    MomentumMatrix,
    dft_forward,
    dft_inverse,
    eigensystem,
    evolve_via_momentum,
    momentum_matrix,
    momentum_matrix_angles,
    spectral_power,
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
from .spectra import (
    CandidateRoot,
    LocalizationCertificate,
    QuarticCoeffs,
    SpecialLine,
    Verdict,
    char_poly_ff,
    char_poly_ms,
    char_poly_numeric,
    constant_root_certificate,
    derivative_residual,
    eig_ff_special,
    eig_ms_special,
    real_imag_residual,
)

__version__ = "0.1.0"
