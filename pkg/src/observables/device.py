"""
Device observables computed from steady-state populations.

The elementary charge is kept as a unit tag: currents are Gamma * p_alpha in
e * eV / hbar and voltages are numerically equal to their eV values.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import InvalidArgumentError, UndefinedVoltageError
from ..model.models import LevelScheme, PhotocellConfig
from ..model.occupation import thermal_energy
from ..solver.steady_state import PopulationVector


@dataclass(frozen=True)
class OperatingPoint:
    """One point of the device characteristic."""

    Gamma: float
    V: float
    j: float
    j_norm: float
    P: float
    populations: Optional[Tuple[float, ...]] = None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        data = {
            "Gamma_eV": self.Gamma,
            "V_volts": self.V,
            "j_natural": self.j,
            "j_norm": self.j_norm,
            "P_natural": self.P,
        }
        if self.populations is not None:
            data["populations"] = list(self.populations)
        return data


def current(p: PopulationVector, Gamma: float) -> float:
    """Current e * Gamma * p_alpha, in e * eV / hbar."""
    if Gamma < 0:
        raise InvalidArgumentError(f"Gamma must be non-negative, got {Gamma}")
    return Gamma * p.alpha


def normalized_current(j: float, gamma_h: float) -> float:
    """Dimensionless j / (2 e gamma_h)."""
    return j / (2.0 * gamma_h)


def voltage(p: PopulationVector, levels: LevelScheme, T_c: float) -> float:
    """
    Photovoltage (E_alpha - E_beta + k_B T_c ln(p_alpha / p_beta)) / e.

    Raises:
        UndefinedVoltageError: If p_alpha or p_beta is zero
    """
    p_alpha, p_beta = p.alpha, p.beta
    if not p_alpha > 0:
        raise UndefinedVoltageError("p_alpha")
    if not p_beta > 0:
        raise UndefinedVoltageError("p_beta")
    return levels.E_alpha - levels.E_beta + thermal_energy(T_c) * math.log(p_alpha / p_beta)


def power(j: float, V: float) -> float:
    """Output power j * V."""
    return j * V


def operating_point(cfg: PhotocellConfig, p: PopulationVector) -> OperatingPoint:
    """Current, voltage and power of ``cfg`` at its load rate, from populations ``p``."""
    Gamma = cfg.rates.Gamma
    j = current(p, Gamma)
    V = voltage(p, cfg.levels, cfg.baths.T_c)
    return OperatingPoint(
        Gamma=Gamma,
        V=V,
        j=j,
        j_norm=normalized_current(j, cfg.mean_gamma_h()),
        P=power(j, V),
        populations=tuple(float(x) for x in p.values),
    )
