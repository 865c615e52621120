"""
Pauli rate matrix: the classical generator acting on populations.
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import InvalidArgumentError
from ..model.models import PhotocellConfig
from .channels import JumpChannel, jump_channels


@dataclass(frozen=True)
class RateMatrix:
    """
    Generator M with M[t, s] the total rate s -> t and zero column sums.

    The stored array is read-only.
    """

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def min_nonzero_rate(self) -> float:
        """Smallest positive off-diagonal rate, 0.0 for a zero generator."""
        off_diagonal = self.matrix[~np.eye(self.dimension, dtype=bool)]
        positive = off_diagonal[off_diagonal > 0]
        return float(positive.min()) if positive.size else 0.0

    @property
    def max_rate(self) -> float:
        return float(np.abs(self.matrix).max()) if self.matrix.size else 0.0

    def outflow(self, k: int) -> float:
        """Total escape rate of state ``k``."""
        return float(-self.matrix[k, k])

    def apply(self, p: np.ndarray) -> np.ndarray:
        return self.matrix @ p


def build_rate_matrix(channels: Iterable[JumpChannel], d: int) -> RateMatrix:
    """
    Assemble the rate matrix of ``channels`` on a d-dimensional basis.

    Duplicate (source, target) channels accumulate.

    Raises:
        InvalidArgumentError: If a channel index is outside 0..d-1 or a channel is a self-loop
    """
    M = np.zeros((d, d), dtype=float)
    for channel in channels:
        if not (0 <= channel.source < d and 0 <= channel.target < d):
            raise InvalidArgumentError(
                f"Channel {channel.source}->{channel.target} outside dimension {d}"
            )
        if channel.source == channel.target:
            raise InvalidArgumentError(f"Channel {channel.source}->{channel.target} is a self-loop")
        M[channel.target, channel.source] += channel.rate

    M[np.diag_indices(d)] = -M.sum(axis=0)
    return RateMatrix(M)


def rate_matrix(cfg: PhotocellConfig) -> RateMatrix:
    """Rate matrix of every jump channel of ``cfg``."""
    return build_rate_matrix(jump_channels(cfg), cfg.basis.dimension)
