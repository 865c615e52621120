"""
Invariant checks for photocell configurations.
"""

import math
from typing import List

from ..errors import ConfigError
from .basis import build_basis
from .models import PhotocellConfig

STEADY_STATE_METHODS = ("gth", "bordered")


def _check_rate(name: str, value: float, violations: List[str]) -> None:
    if not math.isfinite(value):
        violations.append(f"non-finite rate {name}")
    elif value < 0:
        violations.append(f"negative rate {name}")


def validate_config(cfg: PhotocellConfig) -> List[str]:
    """
    Collect every violated invariant of ``cfg``.

    Args:
        cfg: Configuration to check

    Returns:
        Human-readable violations; empty when the configuration is valid
    """
    violations: List[str] = []
    basis = cfg.basis
    n = basis.donor_count

    # Basis
    if not isinstance(n, int) or n < 1:
        violations.append(f"donor_count must be at least 1, got {n!r}")
    else:
        expected = build_basis(n)
        if basis.labels != expected.labels:
            violations.append(f"basis labels {list(basis.labels)} are not canonical")
        if dict(basis.index) != dict(expected.index):
            violations.append("basis index map is not a bijection onto 0..N+2")

    # Levels
    levels = cfg.levels
    if len(levels.E_a) != n:
        violations.append(f"expected {n} donor energies, got {len(levels.E_a)}")
    for i, E_a in enumerate(levels.E_a, start=1):
        if not E_a > levels.E_alpha:
            violations.append(f"energy ordering violated: E_a[{i}]={E_a} <= E_alpha")
    if not levels.E_alpha > levels.E_beta:
        violations.append("energy ordering violated: E_alpha <= E_beta")
    if not levels.E_beta > levels.E_b:
        violations.append("energy ordering violated: E_beta <= E_b")

    # Rates
    rates = cfg.rates
    if len(rates.gamma_h) != n:
        violations.append(f"expected {n} hot rates gamma_h, got {len(rates.gamma_h)}")
    if len(rates.gamma_c) != n:
        violations.append(f"expected {n} cold rates gamma_c, got {len(rates.gamma_c)}")
    for i, value in enumerate(rates.gamma_h, start=1):
        _check_rate(f"gamma_h[{i}]", value, violations)
    for i, value in enumerate(rates.gamma_c, start=1):
        _check_rate(f"gamma_c[{i}]", value, violations)
    _check_rate("Gamma_c", rates.Gamma_c, violations)
    _check_rate("Gamma", rates.Gamma, violations)
    _check_rate("chi", rates.chi, violations)
    if rates.J != 0:
        violations.append("donor coupling out of scope (model assumes J=0)")

    # Baths
    baths = cfg.baths
    if not baths.T_c > 0:
        violations.append(f"cold bath temperature T_c must be positive, got {baths.T_c}")
    if (baths.n_h is None) == (baths.T_h is None):
        violations.append("exactly one of bath.n_h and bath.T_h must be set")
    if baths.n_h is not None and not baths.n_h >= 0:
        violations.append(f"hot occupation n_h must be non-negative, got {baths.n_h}")
    if baths.T_h is not None and not baths.T_h > 0:
        violations.append(f"hot bath temperature T_h must be positive, got {baths.T_h}")

    # Solver
    tolerances = cfg.solver_tolerances
    for name in ("steady_state_residual", "propagation_rtol", "root_find_vtol"):
        value = getattr(tolerances, name)
        if not value > 0:
            violations.append(f"tolerance {name} must be positive, got {value}")
    if tolerances.steady_state_method not in STEADY_STATE_METHODS:
        violations.append(
            f"unknown steady_state_method {tolerances.steady_state_method!r}"
        )

    return violations


def ensure_valid(cfg: PhotocellConfig) -> PhotocellConfig:
    """Return ``cfg`` unchanged or raise ConfigError listing every violation."""
    violations = validate_config(cfg)
    if violations:
        raise ConfigError("Invalid configuration: " + "; ".join(violations))
    return cfg
