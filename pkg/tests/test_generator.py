from dataclasses import replace

import numpy as np
import pytest

from src.errors import InvalidArgumentError, OutOfScopeError
from src.generator import (
    ChannelKind,
    JumpChannel,
    build_liouvillian,
    build_rate_matrix,
    coherence_decay_rate,
    hamiltonian,
    jump_channels,
    rate_matrix,
    unvectorize,
    vectorize,
)
from src.model import default_config, gibbs_populations, planck_occupation, thermal_config
from src.solver import liouvillian_steady_state


def test_hamiltonian_single_donor(cfg1):
    H = hamiltonian(cfg1)
    np.testing.assert_array_equal(H, np.diag([0.0, 1.8, 1.6, 0.2]))


@pytest.mark.parametrize("n", [1, 4, 9])
def test_hamiltonian_is_diagonal_with_trap_at_0_2(n):
    cfg = default_config(n)
    H = hamiltonian(cfg)
    assert H[cfg.basis.beta, cfg.basis.beta] == pytest.approx(0.2)
    assert np.count_nonzero(H - np.diag(np.diag(H))) == 0


def test_hamiltonian_rejects_coupled_donors(cfg3):
    cfg = replace(cfg3, rates=replace(cfg3.rates, J=0.01))
    with pytest.raises(OutOfScopeError):
        hamiltonian(cfg)


# --- channels ----------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 17))
def test_channel_count(n):
    assert len(jump_channels(default_config(n))) == 4 * n + 4


def test_open_circuit_has_no_load_channels(cfg3):
    channels = jump_channels(cfg3.with_load(0.0))
    by_kind = {c.kind: c for c in channels}
    assert by_kind[ChannelKind.WORK].rate == 0.0
    assert by_kind[ChannelKind.RECOMBINATION].rate == 0.0


def test_cold_transfer_rate(cfg1):
    n_c = planck_occupation(0.2, 300.0)
    down = next(c for c in jump_channels(cfg1) if c.kind is ChannelKind.COLD_TRANSFER_DOWN)
    assert (down.source, down.target) == (1, 2)
    assert down.rate == pytest.approx(6e-3 * (1 + n_c), rel=1e-14)
    assert down.rate == pytest.approx(6.0026e-3, rel=1e-4)


def test_load_channels_point_down(cfg3):
    basis = cfg3.basis
    channels = {c.kind: c for c in jump_channels(cfg3)}
    work = channels[ChannelKind.WORK]
    recombination = channels[ChannelKind.RECOMBINATION]
    assert (work.source, work.target, work.rate) == (basis.alpha, basis.beta, 0.12)
    assert (recombination.source, recombination.target) == (basis.alpha, basis.ground)
    assert recombination.rate == pytest.approx(0.2 * 0.12)


@pytest.mark.parametrize(
    "up, down",
    [
        (ChannelKind.HOT_ABSORB, ChannelKind.HOT_EMIT),
        (ChannelKind.COLD_TRANSFER_UP, ChannelKind.COLD_TRANSFER_DOWN),
        (ChannelKind.TRAP_EXCITE, ChannelKind.TRAP_DECAY),
    ],
)
def test_detailed_balance_per_pair(cfg3, up, down):
    channels = jump_channels(cfg3)
    ups = [c for c in channels if c.kind is up]
    downs = [c for c in channels if c.kind is down]
    assert len(ups) == len(downs)

    if up is ChannelKind.HOT_ABSORB:
        n = cfg3.baths.n_h
    else:
        n = planck_occupation(0.2, 300.0)
    for u, d in zip(ups, downs):
        assert (u.source, u.target) == (d.target, d.source)
        assert u.rate / d.rate == pytest.approx(n / (n + 1), rel=1e-14)


# --- rate matrix -------------------------------------------------------------


def test_single_channel_matrix():
    M = build_rate_matrix([JumpChannel(0, 1, 0.3, ChannelKind.WORK)], 2)
    np.testing.assert_array_equal(M.matrix, [[-0.3, 0.0], [0.3, 0.0]])


def test_empty_channel_list_gives_zero_matrix():
    M = build_rate_matrix([], 3)
    np.testing.assert_array_equal(M.matrix, np.zeros((3, 3)))
    assert M.min_nonzero_rate == 0.0


def test_duplicate_channels_accumulate():
    channels = [JumpChannel(0, 1, 0.1, ChannelKind.WORK), JumpChannel(0, 1, 0.2, ChannelKind.WORK)]
    M = build_rate_matrix(channels, 2)
    assert M.matrix[1, 0] == pytest.approx(0.3)


@pytest.mark.parametrize("source, target", [(0, 3), (5, 0), (-1, 0), (1, 1)])
def test_invalid_channel_index(source, target):
    with pytest.raises(InvalidArgumentError):
        build_rate_matrix([JumpChannel(source, target, 1.0, ChannelKind.WORK)], 3)


def test_rate_matrix_is_read_only(cfg1):
    M = rate_matrix(cfg1)
    with pytest.raises(ValueError):
        M.matrix[0, 0] = 1.0


@pytest.mark.parametrize("n", range(1, 17))
def test_rate_matrix_conserves_probability(n):
    M = rate_matrix(default_config(n)).matrix
    assert np.abs(M.sum(axis=0)).max() <= 1e-14
    off_diagonal = M[~np.eye(M.shape[0], dtype=bool)]
    assert (off_diagonal >= 0).all()


# --- Liouvillian -------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_population_block_matches_rate_matrix(n):
    cfg = default_config(n)
    L = build_liouvillian(cfg)
    np.testing.assert_allclose(L.population_block(), rate_matrix(cfg).matrix, rtol=0, atol=1e-12)


@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_trace_is_left_null_vector(n):
    L = build_liouvillian(default_config(n))
    assert np.abs(L.trace_functional() @ L.matrix).max() <= 1e-12


def test_maximally_mixed_state_maps_to_traceless_hermitian(cfg3):
    L = build_liouvillian(cfg3)
    d = L.dimension
    out = L.apply(np.eye(d) / d)
    assert abs(np.trace(out)) <= 1e-12
    assert np.abs(out - out.conj().T).max() <= 1e-12


def test_hermitian_input_gives_hermitian_output(cfg1):
    rng = np.random.default_rng(7)
    d = cfg1.basis.dimension
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = A @ A.conj().T
    rho /= np.trace(rho)
    out = build_liouvillian(cfg1).apply(rho)
    assert np.abs(out - out.conj().T).max() <= 1e-12


def test_vectorization_is_column_major():
    rho = np.arange(9.0).reshape(3, 3)
    np.testing.assert_array_equal(vectorize(rho), rho.T.ravel())
    np.testing.assert_array_equal(unvectorize(vectorize(rho), 3), rho)


def test_coherence_decays_independently(cfg1):
    L = build_liouvillian(cfg1)
    d = L.dimension
    b, a = cfg1.basis.ground, cfg1.basis.donor(1)
    k = a + b * d  # rho[a_1, b]

    rate = coherence_decay_rate(cfg1, a, b)
    assert rate > 0
    assert L.matrix[k, k].real == pytest.approx(-rate, rel=1e-12)
    assert L.matrix[k, k].imag == pytest.approx(-1.8, rel=1e-12)
    others = np.delete(np.arange(d * d), k)
    assert np.count_nonzero(L.matrix[k, others]) == 0
    assert np.count_nonzero(L.matrix[others, k]) == 0


def test_coherence_decay_rate_of_every_pair(cfg3):
    M = rate_matrix(cfg3)
    L = build_liouvillian(cfg3)
    d = cfg3.basis.dimension
    for row in range(d):
        for col in range(d):
            rate = coherence_decay_rate(cfg3, row, col)
            if row == col:
                assert rate == 0.0
                continue
            assert rate == pytest.approx(0.5 * (M.outflow(row) + M.outflow(col)))
            assert L.matrix[row + col * d, row + col * d].real == pytest.approx(-rate, rel=1e-12)


def test_thermal_liouvillian_has_gibbs_steady_state():
    cfg = thermal_config(2)
    rho = liouvillian_steady_state(build_liouvillian(cfg))

    np.testing.assert_allclose(
        rho.populations().values, gibbs_populations(cfg, 300.0), rtol=0, atol=1e-10
    )
    assert rho.max_coherence() < 1e-10
