# src/solver/__init__.py
"""Steady-state and time-propagation solvers."""

from .propagation import (
    Trajectory,
    propagate,
    propagate_trajectory,
    steady_state_by_propagation,
)
from .steady_state import (
    DensityMatrix,
    PopulationVector,
    closed_classes,
    liouvillian_steady_state,
    steady_state_populations,
)

__all__ = [
    "DensityMatrix",
    "PopulationVector",
    "Trajectory",
    "closed_classes",
    "liouvillian_steady_state",
    "propagate",
    "propagate_trajectory",
    "steady_state_by_propagation",
    "steady_state_populations",
]
