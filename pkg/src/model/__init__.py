# src/model/__init__.py
"""Domain types, thermal occupations and default configurations."""

from .basis import ALPHA, BETA, GROUND, StateBasis, build_basis, donor_label
from .defaults import (
    CALIBRATED_HOT_OCCUPATION,
    MAX_DONORS,
    default_config,
    effective_hot_temperature,
    gibbs_populations,
    hot_occupation,
    thermal_config,
)
from .models import BathSpec, LevelScheme, PhotocellConfig, RateSet, SolverTolerances
from .occupation import (
    K_B_EV_PER_K,
    effective_temperature,
    planck_occupation,
    thermal_energy,
)
from .validation import ensure_valid, validate_config

__all__ = [
    "ALPHA",
    "BETA",
    "GROUND",
    "CALIBRATED_HOT_OCCUPATION",
    "K_B_EV_PER_K",
    "MAX_DONORS",
    "BathSpec",
    "LevelScheme",
    "PhotocellConfig",
    "RateSet",
    "SolverTolerances",
    "StateBasis",
    "build_basis",
    "default_config",
    "donor_label",
    "effective_hot_temperature",
    "effective_temperature",
    "ensure_valid",
    "gibbs_populations",
    "hot_occupation",
    "planck_occupation",
    "thermal_config",
    "thermal_energy",
    "validate_config",
]
