"""
Full Lindblad superoperator on the column-major vectorised density matrix.

With vec stacking columns, vec(A rho B) = (B^T kron A) vec(rho).
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import InvalidArgumentError
from ..model.models import PhotocellConfig
from .channels import JumpChannel, jump_channels
from .hamiltonian import hamiltonian
from .rate_matrix import rate_matrix


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Stack the columns of ``rho`` into one vector."""
    return np.asarray(rho).reshape(-1, order="F")


def unvectorize(vec: np.ndarray, d: int) -> np.ndarray:
    """Inverse of vectorize for a d x d matrix."""
    return np.asarray(vec).reshape((d, d), order="F")


def population_indices(d: int) -> np.ndarray:
    """Positions of rho[k, k] inside vec(rho)."""
    return np.arange(d) * (d + 1)


@dataclass(frozen=True)
class Liouvillian:
    """Complex d^2 x d^2 generator of the master equation."""

    matrix: np.ndarray
    dimension: int

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (self.dimension**2, self.dimension**2):
            raise InvalidArgumentError(
                f"Liouvillian shape {matrix.shape} does not match dimension {self.dimension}"
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    def population_block(self) -> np.ndarray:
        """Real block acting among the diagonal entries of rho."""
        idx = population_indices(self.dimension)
        return self.matrix[np.ix_(idx, idx)].real

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """d rho / dt for the density matrix ``rho``."""
        return unvectorize(self.matrix @ vectorize(rho), self.dimension)

    def trace_functional(self) -> np.ndarray:
        """Row vector t with t . vec(rho) = trace(rho)."""
        t = np.zeros(self.dimension**2, dtype=complex)
        t[population_indices(self.dimension)] = 1.0
        return t


def dissipator(channels: Iterable[JumpChannel], d: int) -> np.ndarray:
    """Sum of r (A rho A^dag - {A^dag A, rho} / 2) with A = |t><s| per channel."""
    identity = np.eye(d)
    D = np.zeros((d * d, d * d), dtype=complex)
    for channel in channels:
        if channel.rate == 0:
            continue
        A = np.zeros((d, d))
        A[channel.target, channel.source] = 1.0
        AdA = A.T @ A
        D += channel.rate * (
            np.kron(A.conj(), A)
            - 0.5 * np.kron(identity, AdA)
            - 0.5 * np.kron(AdA.T, identity)
        )
    return D


def build_liouvillian(cfg: PhotocellConfig) -> Liouvillian:
    """
    Assemble -i[H, rho] plus every channel dissipator of ``cfg``.

    Raises:
        OutOfScopeError: If J != 0
    """
    d = cfg.basis.dimension
    H = hamiltonian(cfg)
    identity = np.eye(d)
    commutator = -1j * (np.kron(identity, H) - np.kron(H.T, identity))
    return Liouvillian(commutator + dissipator(jump_channels(cfg), d), d)


def coherence_decay_rate(cfg: PhotocellConfig, row: int, col: int) -> float:
    """
    Damping rate of the coherence rho[row, col].

    Half the summed escape rates of the two states; 0.0 on the diagonal.
    """
    d = cfg.basis.dimension
    if not (0 <= row < d and 0 <= col < d):
        raise InvalidArgumentError(f"Element ({row}, {col}) outside dimension {d}")
    if row == col:
        return 0.0
    M = rate_matrix(cfg)
    return 0.5 * (M.outflow(row) + M.outflow(col))
