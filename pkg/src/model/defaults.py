"""
Default photocell parameters and ready-made configurations.
"""

from dataclasses import replace

import numpy as np

from .basis import build_basis
from .models import BathSpec, LevelScheme, PhotocellConfig, RateSet, SolverTolerances
from .occupation import effective_temperature, thermal_energy

# Absolute energies in eV, E_b is the reference
E_B = 0.0
E_BETA = 0.2
E_ALPHA = 1.6
E_A = 1.8

# Bare rates in eV (hbar = 1)
GAMMA_H = 0.62e-6
GAMMA_C = 6e-3
GAMMA_TRAP = 0.025
GAMMA_LOAD = 0.12
CHI = 0.2

T_COLD = 300.0

# Hot-bath occupation frozen from calibrate_hot_occupation(default_config(3))
CALIBRATED_HOT_OCCUPATION = 3.54e-3

MAX_DONORS = 16


def default_config(donor_count: int) -> PhotocellConfig:
    """
    Build the standard photocell with ``donor_count`` identical donors.

    Args:
        donor_count: Number of donors N (at least 1)

    Returns:
        PhotocellConfig with the calibrated hot-bath occupation
    """
    basis = build_basis(donor_count)
    levels = LevelScheme(
        E_b=E_B,
        E_a=(E_A,) * donor_count,
        E_alpha=E_ALPHA,
        E_beta=E_BETA,
    )
    rates = RateSet(
        gamma_h=(GAMMA_H,) * donor_count,
        gamma_c=(GAMMA_C,) * donor_count,
        Gamma_c=GAMMA_TRAP,
        Gamma=GAMMA_LOAD,
        chi=CHI,
        J=0.0,
    )
    baths = BathSpec(T_c=T_COLD, n_h=CALIBRATED_HOT_OCCUPATION)
    return PhotocellConfig(
        basis=basis,
        levels=levels,
        rates=rates,
        baths=baths,
        solver_tolerances=SolverTolerances(),
    )


def thermal_config(donor_count: int, T: float = T_COLD) -> PhotocellConfig:
    """
    Photocell in the dark: every bath at temperature ``T``, no load, no recombination.

    All channels then obey detailed balance at one temperature and the
    steady state is the Gibbs distribution.
    """
    cfg = default_config(donor_count)
    return replace(cfg, baths=replace(cfg.baths, T_c=T)).thermalized()


def hot_occupation(cfg: PhotocellConfig, donor: int = 1) -> float:
    """Resolved hot-bath occupation of ``donor`` (1-based) in either bath mode."""
    return cfg.hot_occupations()[donor - 1]


def effective_hot_temperature(n_h: float, delta_E: float = E_A - E_B) -> float:
    """Temperature a Planck bath needs to reach occupation ``n_h`` at gap ``delta_E``."""
    return effective_temperature(n_h, delta_E)


def gibbs_populations(cfg: PhotocellConfig, T: float) -> np.ndarray:
    """Boltzmann weights of the basis energies at ``T``, normalised."""
    energies = cfg.levels.energies()
    weights = np.exp(-(energies - energies.min()) / thermal_energy(T))
    return weights / weights.sum()
