"""
Thermal occupation numbers (Bose-Einstein / Planck) in eV and kelvin.
"""

import math

import numpy as np

from ..errors import InvalidArgumentError

# CODATA 2018 Boltzmann constant
K_B_EV_PER_K = 8.617333262e-5


def thermal_energy(T: float) -> float:
    """k_B * T in eV."""
    return K_B_EV_PER_K * T


def planck_occupation(delta_E: float, T: float) -> float:
    """
    Mean thermal occupation 1 / (exp(dE / k_B T) - 1).

    Args:
        delta_E: Transition energy in eV (> 0)
        T: Temperature in K (> 0)

    Returns:
        Occupation number; underflows to 0.0 for dE >> k_B T

    Raises:
        InvalidArgumentError: If delta_E <= 0 or T <= 0
    """
    if not delta_E > 0:
        raise InvalidArgumentError(f"delta_E must be positive, got {delta_E!r} eV")
    if not T > 0:
        raise InvalidArgumentError(f"temperature must be positive, got {T!r} K")

    x = delta_E / thermal_energy(T)
    with np.errstate(over="ignore"):
        return float(1.0 / np.expm1(x))


def effective_temperature(occupation: float, delta_E: float) -> float:
    """
    Temperature at which a mode of energy ``delta_E`` has the given occupation.

    Inverse of planck_occupation in T. Returns 0.0 for a zero occupation.
    """
    if occupation < 0:
        raise InvalidArgumentError(f"occupation must be non-negative, got {occupation!r}")
    if not delta_E > 0:
        raise InvalidArgumentError(f"delta_E must be positive, got {delta_E!r} eV")
    if occupation == 0:
        return 0.0
    return delta_E / (K_B_EV_PER_K * math.log1p(1.0 / occupation))
