"""
Steady states of the rate matrix and of the full Liouvillian.

The default population solver is Grassmann-Taksar-Heyman state reduction on
the closed communicating class. It never subtracts, so every population comes
out with full relative precision even when it is 1e-30 of the largest.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.sparse.csgraph import connected_components

from ..errors import DegenerateSteadyStateError, InvalidArgumentError, SolverError
from ..generator.liouvillian import Liouvillian, unvectorize
from ..generator.rate_matrix import RateMatrix

logger = logging.getLogger(__name__)

CLAMP_LIMIT = 1e-12
BORDERED_CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class PopulationVector:
    """Normalised populations in basis order; alpha and beta are the last two entries."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    @property
    def alpha(self) -> float:
        return float(self.values[-2])

    @property
    def beta(self) -> float:
        return float(self.values[-1])

    @property
    def total(self) -> float:
        return float(self.values.sum())

    def to_dict(self, labels: Sequence[str]) -> dict:
        """Populations keyed by basis label."""
        return {label: float(value) for label, value in zip(labels, self.values)}


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace density matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def populations(self) -> PopulationVector:
        return PopulationVector(np.diag(self.matrix).real)

    def max_coherence(self) -> float:
        """Largest off-diagonal magnitude."""
        off_diagonal = self.matrix[~np.eye(self.dimension, dtype=bool)]
        return float(np.abs(off_diagonal).max()) if off_diagonal.size else 0.0

    def hermiticity_error(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())


def closed_classes(M: np.ndarray) -> List[Tuple[int, ...]]:
    """
    Closed communicating classes of the chain generated by ``M``.

    Returns:
        Classes as sorted index tuples, ordered by their smallest state
    """
    d = M.shape[0]
    # adjacency[s, t] != 0 means an s -> t transition
    adjacency = (np.asarray(M).T > 0).astype(float)
    np.fill_diagonal(adjacency, 0.0)
    n_components, component_of = connected_components(
        adjacency, directed=True, connection="strong"
    )

    classes = []
    for c in range(n_components):
        members = np.flatnonzero(component_of == c)
        outside = np.setdiff1d(np.arange(d), members)
        if not adjacency[np.ix_(members, outside)].any():
            classes.append(tuple(int(k) for k in members))
    return sorted(classes)


def _gth(Q: np.ndarray) -> np.ndarray:
    """Stationary vector of an irreducible rate matrix Q with Q[s, t] = rate s -> t."""
    n = Q.shape[0]
    P = np.array(Q, dtype=float)
    np.fill_diagonal(P, 0.0)

    for k in range(n - 1, 0, -1):
        s = P[k, :k].sum()
        if not s > 0:
            raise SolverError(f"State reduction broke down at state {k}: chain is reducible")
        P[:k, k] /= s
        P[:k, :k] += np.outer(P[:k, k], P[k, :k])

    pi = np.zeros(n)
    pi[0] = 1.0
    for k in range(1, n):
        pi[k] = pi[:k] @ P[:k, k]
    return pi / pi.sum()


def _bordered(M: np.ndarray) -> np.ndarray:
    """Solve M p = 0 with the first row replaced by the normalisation sum(p) = 1."""
    d = M.shape[0]
    bordered = np.array(M, dtype=float)
    bordered[0, :] = 1.0
    rhs = np.zeros(d)
    rhs[0] = 1.0

    condition = np.linalg.cond(bordered)
    if condition > BORDERED_CONDITION_LIMIT:
        logger.warning(
            f"Bordered system ill-conditioned (cond={condition:.3e}), using SVD null space"
        )
        basis = scipy.linalg.null_space(M)
        if basis.shape[1] != 1:
            raise SolverError(f"Null space has dimension {basis.shape[1]}, expected 1")
        p = basis[:, 0]
        return p / p.sum()

    return scipy.linalg.solve(bordered, rhs)


def _clamp(p: np.ndarray) -> np.ndarray:
    most_negative = float(p.min())
    if most_negative < -CLAMP_LIMIT:
        raise SolverError(f"Steady state has negative population {most_negative:.3e}")
    if most_negative < 0:
        logger.debug(f"Clamped negative populations of magnitude {-most_negative:.3e} to 0")
        p = np.where(p < 0, 0.0, p)
    return p / p.sum()


def steady_state_populations(
    M: RateMatrix, method: str = "gth", residual_tol: float = 1e-12
) -> PopulationVector:
    """
    Unique normalised null vector of the rate matrix.

    Args:
        M: Rate matrix
        method: "gth" (state reduction) or "bordered" (bordered linear solve)
        residual_tol: Bound on ||M p||_inf

    Returns:
        PopulationVector; states outside the closed class get population 0

    Raises:
        DegenerateSteadyStateError: If more than one closed class exists
        SolverError: If the residual bound is not met
    """
    matrix = M.matrix
    d = M.dimension
    classes = closed_classes(matrix)
    if len(classes) != 1:
        raise DegenerateSteadyStateError(classes)

    if method == "gth":
        members = np.array(classes[0])
        p = np.zeros(d)
        p[members] = _gth(matrix[np.ix_(members, members)].T)
    elif method == "bordered":
        p = _bordered(matrix)
    else:
        raise InvalidArgumentError(f"Unknown steady-state method {method!r}")

    p = _clamp(p)
    residual = float(np.abs(matrix @ p).max())
    if residual > residual_tol:
        raise SolverError(
            f"Steady-state residual {residual:.3e} exceeds tolerance {residual_tol:.1e}"
        )
    return PopulationVector(p)


def liouvillian_steady_state(L: Liouvillian) -> DensityMatrix:
    """
    Steady state of the full superoperator.

    Dense bordered solve with the trace functional as the normalisation row,
    followed by hermitisation.
    """
    d = L.dimension
    A = np.array(L.matrix)
    A[0, :] = L.trace_functional()
    rhs = np.zeros(d * d, dtype=complex)
    rhs[0] = 1.0

    v = scipy.linalg.solve(A, rhs)
    rho = unvectorize(v, d)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)

