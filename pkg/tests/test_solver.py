import logging
from dataclasses import replace

import numpy as np
import pytest

from src.errors import DegenerateSteadyStateError, InvalidArgumentError
from src.generator import (
    ChannelKind,
    JumpChannel,
    build_liouvillian,
    build_rate_matrix,
    rate_matrix,
)
from src.model import BathSpec, default_config, gibbs_populations, planck_occupation, thermal_config
from src.observables import voltage
from src.solver import (
    DensityMatrix,
    PopulationVector,
    closed_classes,
    liouvillian_steady_state,
    propagate,
    propagate_trajectory,
    steady_state_by_propagation,
    steady_state_populations,
)
from src.solver.propagation import slowest_relaxation_rate


def test_two_state_detailed_balance():
    N_c = planck_occupation(0.2, 300.0)
    channels = [
        JumpChannel(1, 0, 0.025 * (N_c + 1), ChannelKind.TRAP_DECAY),
        JumpChannel(0, 1, 0.025 * N_c, ChannelKind.TRAP_EXCITE),
    ]
    p = steady_state_populations(build_rate_matrix(channels, 2))
    assert p[1] / p[0] == pytest.approx(N_c / (N_c + 1), rel=1e-13)
    assert p.total == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("n", [1, 3, 9])
def test_dark_cell_relaxes_to_gibbs(n):
    cfg = thermal_config(n)
    p = steady_state_populations(rate_matrix(cfg))
    expected = gibbs_populations(cfg, 300.0)

    np.testing.assert_allclose(p.values, expected, rtol=1e-9, atol=0)
    assert voltage(p, cfg.levels, 300.0) == pytest.approx(0.0, abs=1e-9)


def test_disconnected_chain_is_degenerate():
    cfg = default_config(2)
    cfg = replace(cfg.with_load(0.0), baths=BathSpec(T_c=1.0, n_h=0.0))
    with pytest.raises(DegenerateSteadyStateError) as excinfo:
        steady_state_populations(rate_matrix(cfg))
    assert excinfo.value.components == ((0,), (3,))
    assert excinfo.value.exit_code == 3


def test_closed_classes_of_irreducible_chain(cfg3):
    assert closed_classes(rate_matrix(cfg3).matrix) == [tuple(range(6))]


def test_transient_states_get_zero_population():
    # 0 -> 1 <-> 2: state 0 is never revisited
    channels = [
        JumpChannel(0, 1, 1.0, ChannelKind.WORK),
        JumpChannel(1, 2, 2.0, ChannelKind.WORK),
        JumpChannel(2, 1, 1.0, ChannelKind.WORK),
    ]
    p = steady_state_populations(build_rate_matrix(channels, 3))
    np.testing.assert_allclose(p.values, [0.0, 1 / 3, 2 / 3], rtol=1e-14)


@pytest.mark.parametrize("n", [1, 3, 6])
def test_bordered_solve_agrees_with_state_reduction(n):
    M = rate_matrix(default_config(n))
    gth = steady_state_populations(M)
    bordered = steady_state_populations(M, method="bordered")
    np.testing.assert_allclose(bordered.values, gth.values, rtol=0, atol=1e-8)


def test_unknown_method_is_rejected(cfg1):
    with pytest.raises(InvalidArgumentError):
        steady_state_populations(rate_matrix(cfg1), method="eigen")


def test_steady_state_residual(cfg3):
    M = rate_matrix(cfg3)
    p = steady_state_populations(M)
    assert np.abs(M.matrix @ p.values).max() <= 1e-12
    assert (p.values >= 0).all()


def test_propagation_oracle_at_high_occupation(cfg1):
    cfg = cfg1.with_hot_occupation(1e-2)
    M = rate_matrix(cfg)
    np.testing.assert_allclose(
        steady_state_by_propagation(M).values,
        steady_state_populations(M).values,
        rtol=0,
        atol=1e-8,
    )


@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_dual_solver_equivalence(n):
    cfg = default_config(n)
    for Gamma in np.logspace(-6, 1, 20):
        M = rate_matrix(cfg.with_load(Gamma))
        np.testing.assert_allclose(
            steady_state_by_propagation(M).values,
            steady_state_populations(M).values,
            rtol=0,
            atol=1e-8,
            err_msg=f"Gamma={Gamma}",
        )


@pytest.mark.parametrize("n, Gamma", [(6, 1.129e-2), (9, 2.069e-3), (9, 4.833e-3)])
def test_propagation_settles_without_trace_drift(n, Gamma, caplog):
    M = rate_matrix(default_config(n).with_load(Gamma))
    with caplog.at_level(logging.DEBUG, logger="src.solver.propagation"):
        p = steady_state_by_propagation(M)

    assert p.values.sum() == pytest.approx(1.0, abs=1e-14)
    assert (p.values >= 0).all()
    assert np.abs(M.matrix @ p.values).max() <= 1e-12 * M.max_rate
    assert any("Settled at" in r.getMessage() for r in caplog.records)
    np.testing.assert_allclose(p.values, steady_state_populations(M).values, rtol=0, atol=1e-8)


def test_slowest_relaxation_rate_of_two_state_chain():
    M = build_rate_matrix(
        [
            JumpChannel(0, 1, 0.3, ChannelKind.HOT_ABSORB),
            JumpChannel(1, 0, 0.5, ChannelKind.HOT_EMIT),
        ],
        2,
    )
    assert slowest_relaxation_rate(M) == pytest.approx(0.8, rel=1e-12)
    assert slowest_relaxation_rate(build_rate_matrix([], 3)) == 0.0


@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_liouvillian_steady_state_matches_populations(n):
    cfg = default_config(n)
    rho = liouvillian_steady_state(build_liouvillian(cfg))
    p = steady_state_populations(rate_matrix(cfg))

    np.testing.assert_allclose(rho.populations().values, p.values, rtol=0, atol=1e-8)
    assert rho.max_coherence() < 1e-10
    assert rho.hermiticity_error() <= 1e-12
    assert rho.trace.real == pytest.approx(1.0, abs=1e-10)


# --- propagation -------------------------------------------------------------


def test_zero_time_returns_initial_state(cfg3):
    M = rate_matrix(cfg3)
    p0 = np.full(M.dimension, 1.0 / M.dimension)
    np.testing.assert_array_equal(propagate(M, p0, 0.0).values, p0)


def test_zero_generator_keeps_state():
    M = build_rate_matrix([], 3)
    p0 = np.array([0.2, 0.3, 0.5])
    np.testing.assert_allclose(propagate(M, p0, 1e3).values, p0, rtol=1e-14)
    np.testing.assert_array_equal(steady_state_by_propagation(M).values, [1.0, 0.0, 0.0])


def test_pure_decay_is_exponential():
    r = 0.3
    M = build_rate_matrix([JumpChannel(1, 0, r, ChannelKind.HOT_EMIT)], 2)
    trajectory = propagate_trajectory(M, [0.0, 1.0], 20.0, t_eval=np.linspace(0, 20, 41))
    np.testing.assert_allclose(
        trajectory.populations()[:, 1], np.exp(-r * trajectory.times), rtol=1e-5, atol=1e-10
    )


def test_single_decay_channel_empties_source():
    M = build_rate_matrix([JumpChannel(0, 1, 1.0, ChannelKind.WORK)], 2)
    np.testing.assert_allclose(steady_state_by_propagation(M).values, [0.0, 1.0], atol=1e-12)


def test_initial_state_must_be_normalised(cfg1):
    with pytest.raises(InvalidArgumentError):
        propagate(rate_matrix(cfg1), [0.5, 0.0, 0.0, 0.0], 1.0)
    with pytest.raises(InvalidArgumentError):
        propagate(rate_matrix(cfg1), [1.0, 0.0, 0.0, 0.0], -1.0)


@pytest.mark.parametrize("n", [1, 3])
def test_trajectory_conserves_trace_and_positivity(n):
    M = rate_matrix(default_config(n))
    p0 = np.zeros(M.dimension)
    p0[0] = 1.0
    trajectory = propagate_trajectory(M, p0, 1e3)
    assert trajectory.max_trace_error <= 1e-9
    assert trajectory.min_population >= -1e-9


def test_density_matrix_propagation_matches_populations(cfg1):
    d = cfg1.basis.dimension
    rho0 = np.zeros((d, d), dtype=complex)
    rho0[0, 0] = 1.0
    p0 = np.diag(rho0).real

    rho = propagate(build_liouvillian(cfg1), rho0, 50.0)
    p = propagate(rate_matrix(cfg1), p0, 50.0)

    assert isinstance(rho, DensityMatrix)
    assert isinstance(p, PopulationVector)
    np.testing.assert_allclose(rho.populations().values, p.values, rtol=0, atol=1e-7)
    assert rho.max_coherence() < 1e-12
