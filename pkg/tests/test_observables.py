import math

import numpy as np
import pytest

from src.errors import InvalidArgumentError, UndefinedVoltageError
from src.generator import rate_matrix
from src.model import CALIBRATED_HOT_OCCUPATION, LevelScheme, default_config, thermal_energy
from src.observables import (
    OperatingPoint,
    current,
    normalized_current,
    operating_point,
    power,
    voltage,
)
from src.solver import PopulationVector, steady_state_populations

LEVELS = LevelScheme(E_b=0.0, E_a=(1.8,), E_alpha=1.6, E_beta=0.2)


def _populations(p_alpha, p_beta):
    return PopulationVector([1.0 - p_alpha - p_beta, 0.0, p_alpha, p_beta])


def test_current_is_load_times_alpha_population():
    p = _populations(0.25, 0.5)
    assert current(p, 0.12) == pytest.approx(0.03)
    assert current(p, 0.0) == 0.0


def test_negative_load_is_rejected():
    with pytest.raises(InvalidArgumentError):
        current(_populations(0.25, 0.5), -1e-3)


def test_equal_populations_give_gap_voltage():
    assert voltage(_populations(0.3, 0.3), LEVELS, 300.0) == pytest.approx(1.4, abs=1e-15)


def test_voltage_follows_population_ratio():
    kT = thermal_energy(300.0)
    V = voltage(_populations(1e-6, 1e-2), LEVELS, 300.0)
    assert V == pytest.approx(1.4 + kT * math.log(1e-4), rel=1e-13)


@pytest.mark.parametrize("p_alpha, p_beta, missing", [(0.0, 0.5, "p_alpha"), (0.5, 0.0, "p_beta")])
def test_voltage_undefined_for_empty_level(p_alpha, p_beta, missing):
    with pytest.raises(UndefinedVoltageError) as excinfo:
        voltage(_populations(p_alpha, p_beta), LEVELS, 300.0)
    assert excinfo.value.population == missing
    assert excinfo.value.exit_code == 3


def test_normalized_current_and_power():
    assert normalized_current(1.24e-6, 0.62e-6) == pytest.approx(1.0)
    assert power(2.0, 1.5) == 3.0


def test_operating_point_at_weak_load_approaches_open_circuit():
    cfg = default_config(1).with_load(1e-12)
    p = steady_state_populations(rate_matrix(cfg))
    point = operating_point(cfg, p)

    n_h = CALIBRATED_HOT_OCCUPATION
    v_oc = 1.8 + thermal_energy(300.0) * math.log(n_h / (n_h + 1))
    assert v_oc - 1e-3 < point.V < v_oc
    assert point.P == pytest.approx(point.j * point.V, rel=1e-15)
    assert point.j_norm == pytest.approx(point.j / (2 * 0.62e-6), rel=1e-15)
    assert len(point.populations) == 4


def test_operating_point_current_grows_with_load(cfg3):
    points = [
        operating_point(cfg3.with_load(G), steady_state_populations(rate_matrix(cfg3.with_load(G))))
        for G in np.logspace(-8, 1, 10)
    ]
    currents = [point.j for point in points]
    voltages = [point.V for point in points]
    assert all(b > a for a, b in zip(currents, currents[1:]))
    assert all(b < a for a, b in zip(voltages, voltages[1:]))


def test_operating_point_to_dict_keys():
    point = OperatingPoint(Gamma=0.1, V=1.2, j=3e-8, j_norm=0.02, P=3.6e-8)
    assert point.to_dict() == {
        "Gamma_eV": 0.1,
        "V_volts": 1.2,
        "j_natural": 3e-8,
        "j_norm": 0.02,
        "P_natural": 3.6e-8,
    }
    with_populations = OperatingPoint(0.1, 1.2, 3e-8, 0.02, 3.6e-8, populations=(0.5, 0.5))
    assert with_populations.to_dict()["populations"] == [0.5, 0.5]
