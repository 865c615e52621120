# src/generator/__init__.py
"""Hamiltonian, jump channels, rate matrix and Liouvillian of a photocell."""

from .channels import ChannelKind, JumpChannel, jump_channels
from .hamiltonian import hamiltonian
from .liouvillian import (
    Liouvillian,
    build_liouvillian,
    coherence_decay_rate,
    unvectorize,
    vectorize,
)
from .rate_matrix import RateMatrix, build_rate_matrix, rate_matrix

__all__ = [
    "ChannelKind",
    "JumpChannel",
    "Liouvillian",
    "RateMatrix",
    "build_liouvillian",
    "build_rate_matrix",
    "coherence_decay_rate",
    "hamiltonian",
    "jump_channels",
    "rate_matrix",
    "unvectorize",
    "vectorize",
]
