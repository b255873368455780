import numpy as np
import pytest
from numpy.testing import assert_allclose

from walklab import (
    InitialKind,
    InitialSpec,
    Shift,
    build_initial,
    delta_state,
    fourier_coin,
    fourier_coin_ms,
    grover_coin,
    psi_fourier_pi2,
    psi_grover_pi2,
    psi_ms_diagonal,
    psi_ms_diagonal_parts,
    psi_ms_uniform,
    step_torus,
)
from conftest import random_alpha

E1 = np.array([1.0, 0, 0, 0])


# ---------------------------------------------------------------- initial states

def test_build_uniform(rng):
    alpha = random_alpha(rng)
    state = build_initial(InitialSpec(InitialKind.UNIFORM, alpha), 4)
    assert_allclose(state.grid, np.broadcast_to(alpha / 4, (4, 4, 4)))
    assert state.norm_squared == pytest.approx(1.0)


def test_build_delta(rng):
    alpha = random_alpha(rng)
    state = build_initial(InitialSpec(InitialKind.DELTA_ORIGIN, alpha), 2)
    assert_allclose(state.grid[0, 0], alpha)
    assert np.abs(state.grid[0, 1]).max() == 0.0


def test_build_diagonal_n2(rng):
    alpha = random_alpha(rng)
    state = build_initial(InitialSpec(InitialKind.DIAGONAL_UNIFORM, alpha), 2)
    assert_allclose(state.grid[0, 0], alpha / np.sqrt(2))
    assert_allclose(state.grid[1, 1], alpha / np.sqrt(2))
    assert np.abs(state.grid[0, 1]).max() == 0.0
    assert np.abs(state.grid[1, 0]).max() == 0.0


def test_build_initial_validation(rng):
    with pytest.raises(ValueError):
        InitialSpec(InitialKind.UNIFORM, [1, 1, 0, 0])
    spec = InitialSpec(InitialKind.UNIFORM, E1)
    with pytest.raises(ValueError):
        build_initial(spec, 1)


# ---------------------------------------------------------------- uniform closed form

def test_uniform_recovers_initial_state(rng):
    alpha = random_alpha(rng)
    state = psi_ms_uniform(0, 5, alpha)
    assert_allclose(state.grid, np.broadcast_to(alpha / 5, (5, 5, 4)), atol=1e-15)


def test_uniform_has_period_four(rng):
    alpha = random_alpha(rng)
    for n in range(8):
        a = psi_ms_uniform(n, 3, alpha)
        b = psi_ms_uniform(n + 4, 3, alpha)
        assert_allclose(a.grid, b.grid, atol=1e-15)


def test_uniform_matches_evolution(rng):
    coin = fourier_coin_ms()
    for n_side in (2, 5, 8):
        alpha = random_alpha(rng)
        state = build_initial(InitialSpec(InitialKind.UNIFORM, alpha), n_side)
        for n in range(12):
            assert np.abs(psi_ms_uniform(n, n_side, alpha).grid - state.grid).max() <= 1e-12
            state = step_torus(state, coin)


# ---------------------------------------------------------------- diagonal closed form

def test_diagonal_recovers_initial_state(rng):
    alpha = random_alpha(rng)
    state = psi_ms_diagonal(0, 4, alpha)
    expected = build_initial(InitialSpec(InitialKind.DIAGONAL_UNIFORM, alpha), 4)
    assert_allclose(state.grid, expected.grid, atol=1e-15)


def test_diagonal_matches_evolution(rng):
    coin = fourier_coin_ms()
    for n_side in (2, 4, 7):
        alpha = random_alpha(rng)
        state = build_initial(InitialSpec(InitialKind.DIAGONAL_UNIFORM, alpha), n_side)
        for n in range(20):
            assert np.abs(psi_ms_diagonal(n, n_side, alpha).grid - state.grid).max() <= 1e-11
            state = step_torus(state, coin)


def test_diagonal_parts_sum_and_supports(rng):
    alpha = random_alpha(rng)
    n_side = 6
    for n in (0, 3, 5, 10):
        trapped, moving = psi_ms_diagonal_parts(n, n_side, alpha)
        full = psi_ms_diagonal(n, n_side, alpha)
        assert_allclose(trapped.grid + moving.grid, full.grid, atol=1e-15)
        x1, x2 = np.meshgrid(np.arange(n_side), np.arange(n_side), indexing="ij")
        s = (x1 + x2) % n_side
        near = (s == 0) | (s == 1) | (s == n_side - 1)
        assert np.abs(trapped.grid[~near]).max(initial=0.0) == 0.0
        ballistic = (s == (-n) % n_side) | (s == n % n_side)
        assert np.abs(moving.grid[~ballistic]).max(initial=0.0) == 0.0


def test_diagonal_odd_step_support(rng):
    # at odd n the component trapped exactly on s = 0 vanishes
    alpha = random_alpha(rng)
    trapped, _ = psi_ms_diagonal_parts(3, 5, alpha)
    x1, x2 = np.meshgrid(np.arange(5), np.arange(5), indexing="ij")
    s = (x1 + x2) % 5
    assert np.abs(trapped.grid[s == 0]).max() == 0.0


# ---------------------------------------------------------------- pi_2^2 tables

def test_fourier_pi2_at_zero_steps(rng):
    alpha = random_alpha(rng)
    for shift in (Shift.MS, Shift.FF):
        state = psi_fourier_pi2(0, shift, alpha)
        assert_allclose(state.grid[0, 0], alpha, atol=1e-15)
        assert np.abs(state.grid[1, 1]).max() <= 1e-15


def test_fourier_pi2_ms_step_eight_swaps_sites(rng):
    alpha = random_alpha(rng)
    state = psi_fourier_pi2(8, Shift.MS, alpha)
    assert np.abs(state.grid[0, 0]).max() <= 1e-15
    assert_allclose(state.grid[1, 1], alpha, atol=1e-15)


def test_fourier_pi2_support_alternates(rng):
    alpha = random_alpha(rng)
    for shift in (Shift.MS, Shift.FF):
        for n in range(16):
            grid = psi_fourier_pi2(n, shift, alpha).grid
            if n % 2 == 0:
                assert np.abs(grid[0, 1]).max() == 0.0
                assert np.abs(grid[1, 0]).max() == 0.0
            else:
                assert np.abs(grid[0, 0]).max() == 0.0
                assert np.abs(grid[1, 1]).max() == 0.0


@pytest.mark.parametrize("shift", [Shift.MS, Shift.FF])
def test_fourier_pi2_matches_evolution(shift, rng):
    coin = fourier_coin(shift)
    for _ in range(3):
        alpha = random_alpha(rng)
        state = delta_state(2, alpha)
        for n in range(33):
            assert np.abs(psi_fourier_pi2(n, shift, alpha).grid - state.grid).max() <= 1e-11
            state = step_torus(state, coin)


def test_grover_pi2_one_step_values(rng):
    alpha = random_alpha(rng)
    state = psi_grover_pi2(1, Shift.MS, alpha)
    assert np.abs(state.grid[0, 0]).max() == 0.0
    assert np.abs(state.grid[1, 1]).max() == 0.0
    expected_01_3 = 0.5 * (alpha[0] + alpha[1] - alpha[2] + alpha[3])
    assert state.grid[0, 1, 2] == pytest.approx(expected_01_3, abs=1e-14)


def test_grover_pi2_ff_two_step_site11(rng):
    alpha = random_alpha(rng)
    state = psi_grover_pi2(2, Shift.FF, alpha)
    s01 = alpha[0] + alpha[1]
    s23 = alpha[2] + alpha[3]
    assert_allclose(state.grid[1, 1], 0.5 * np.array([s01, s01, s23, s23]), atol=1e-14)


@pytest.mark.parametrize("shift", [Shift.MS, Shift.FF])
def test_grover_pi2_matches_evolution_and_period(shift, rng):
    coin = grover_coin(shift)
    for _ in range(3):
        alpha = random_alpha(rng)
        state = delta_state(2, alpha)
        for n in range(17):
            table = psi_grover_pi2(n, shift, alpha)
            assert np.abs(table.grid - state.grid).max() <= 1e-11
            again = psi_grover_pi2(n + 4, shift, alpha)
            assert_allclose(again.grid, table.grid, atol=1e-15)
            state = step_torus(state, coin)


def test_closed_forms_are_normalized(rng):
    alpha = random_alpha(rng)
    for n in (0, 1, 5, 9):
        assert psi_fourier_pi2(n, Shift.FF, alpha).norm_squared == pytest.approx(1.0, abs=1e-11)
        assert psi_grover_pi2(n, Shift.MS, alpha).norm_squared == pytest.approx(1.0, abs=1e-11)
        assert psi_ms_uniform(n, 6, alpha).norm_squared == pytest.approx(1.0, abs=1e-11)
        assert psi_ms_diagonal(n, 6, alpha).norm_squared == pytest.approx(1.0, abs=1e-11)
