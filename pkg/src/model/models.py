"""
Data models for the photocell: level scheme, rates, baths and the full configuration.

All models are frozen dataclasses; derived quantities (thermal occupations) are
computed on demand from the stored temperatures and never stored.
"""

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from .basis import StateBasis, build_basis
from .occupation import planck_occupation


@dataclass(frozen=True)
class LevelScheme:
    """Absolute state energies in eV, E_b being the zero of energy."""

    E_b: float = 0.0
    E_a: Tuple[float, ...] = ()
    E_alpha: float = 0.0
    E_beta: float = 0.0

    def energies(self) -> np.ndarray:
        """Energies in basis order [b, a_1 .. a_N, alpha, beta]."""
        return np.array([self.E_b, *self.E_a, self.E_alpha, self.E_beta], dtype=float)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "E_b": self.E_b,
            "E_a": list(self.E_a),
            "E_alpha": self.E_alpha,
            "E_beta": self.E_beta,
        }


@dataclass(frozen=True)
class RateSet:
    """Bare transition rates in eV (hbar = 1); chi is dimensionless."""

    gamma_h: Tuple[float, ...] = ()
    gamma_c: Tuple[float, ...] = ()
    Gamma_c: float = 0.0
    Gamma: float = 0.0
    chi: float = 0.0
    J: float = 0.0

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "gamma_h": list(self.gamma_h),
            "gamma_c": list(self.gamma_c),
            "Gamma_c": self.Gamma_c,
            "Gamma": self.Gamma,
            "chi": self.chi,
            "J": self.J,
        }


@dataclass(frozen=True)
class BathSpec:
    """
    Cold bath temperature and the hot-bath occupation.

    Exactly one of ``n_h`` (explicit mode) or ``T_h`` (from_temperature mode) is set.
    """

    T_c: float = 300.0
    n_h: Optional[float] = None
    T_h: Optional[float] = None

    @property
    def hot_occupation_mode(self) -> str:
        return "from_temperature" if self.T_h is not None else "explicit"

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "T_c": self.T_c,
            "hot_occupation_mode": self.hot_occupation_mode,
            "n_h": self.n_h,
            "T_h": self.T_h,
        }


@dataclass(frozen=True)
class SolverTolerances:
    """Numerical tolerances and the steady-state method."""

    steady_state_residual: float = 1e-12
    propagation_rtol: float = 1e-8
    root_find_vtol: float = 1e-6
    steady_state_method: str = "gth"

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "steady_state_residual": self.steady_state_residual,
            "propagation_rtol": self.propagation_rtol,
            "root_find_vtol": self.root_find_vtol,
            "steady_state_method": self.steady_state_method,
        }


@dataclass(frozen=True)
class PhotocellConfig:
    """Complete, immutable description of one photocell."""

    basis: StateBasis
    levels: LevelScheme
    rates: RateSet
    baths: BathSpec
    solver_tolerances: SolverTolerances = field(default_factory=SolverTolerances)

    @property
    def donor_count(self) -> int:
        return self.basis.donor_count

    def hot_occupations(self) -> Tuple[float, ...]:
        """Hot-bath occupation n_ih per donor."""
        if self.baths.T_h is not None:
            return tuple(
                planck_occupation(E_a - self.levels.E_b, self.baths.T_h)
                for E_a in self.levels.E_a
            )
        return tuple(float(self.baths.n_h) for _ in self.levels.E_a)

    def cold_donor_occupations(self) -> Tuple[float, ...]:
        """Cold-bath occupation n_ic of each a_i -> alpha gap at T_c."""
        return tuple(
            planck_occupation(E_a - self.levels.E_alpha, self.baths.T_c)
            for E_a in self.levels.E_a
        )

    def trap_occupation(self) -> float:
        """Cold-bath occupation N_c of the beta -> b gap at T_c."""
        return planck_occupation(self.levels.E_beta - self.levels.E_b, self.baths.T_c)

    def mean_gamma_h(self) -> float:
        """Hot rate used to normalise currents (all donors share it by default)."""
        return float(np.mean(self.rates.gamma_h))

    def with_load(self, Gamma: float) -> "PhotocellConfig":
        """Copy with a different load rate Gamma."""
        return replace(self, rates=replace(self.rates, Gamma=float(Gamma)))

    def thermalized(self) -> "PhotocellConfig":
        """Copy in the dark: hot bath at T_c, no load, no recombination."""
        return replace(
            self,
            rates=replace(self.rates, Gamma=0.0, chi=0.0),
            baths=BathSpec(T_c=self.baths.T_c, n_h=None, T_h=self.baths.T_c),
        )

    def with_hot_occupation(self, n_h: float) -> "PhotocellConfig":
        """Copy with an explicit hot-bath occupation."""
        return replace(
            self, baths=BathSpec(T_c=self.baths.T_c, n_h=float(n_h), T_h=None)
        )

    def resized(self, donor_count: int) -> "PhotocellConfig":
        """
        Copy with ``donor_count`` identical donors.

        Every donor takes the parameters of donor 1 of this configuration.
        """
        basis = build_basis(donor_count)
        levels = replace(self.levels, E_a=(self.levels.E_a[0],) * donor_count)
        rates = replace(
            self.rates,
            gamma_h=(self.rates.gamma_h[0],) * donor_count,
            gamma_c=(self.rates.gamma_c[0],) * donor_count,
        )
        return replace(self, basis=basis, levels=levels, rates=rates)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization and hashing."""
        return {
            "donor_count": self.donor_count,
            "labels": list(self.basis.labels),
            "energies": self.levels.to_dict(),
            "rates": self.rates.to_dict(),
            "bath": self.baths.to_dict(),
            "solver": self.solver_tolerances.to_dict(),
        }
