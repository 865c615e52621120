"""
Time propagation of populations or density matrices with scipy's adaptive integrators.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import IntegrationError, InvalidArgumentError, NonConvergenceError
from ..generator.liouvillian import Liouvillian, population_indices, unvectorize, vectorize
from ..generator.rate_matrix import RateMatrix
from .steady_state import DensityMatrix, PopulationVector

logger = logging.getLogger(__name__)

Generator = Union[RateMatrix, Liouvillian]

TRACE_TOLERANCE = 1e-9
POSITIVITY_TOLERANCE = 1e-9
IMPLICIT_METHODS = ("Radau", "BDF", "LSODA")

ZERO_EIGENVALUE = 1e-13
SETTLE_FACTOR = 40.0
CHUNK_GROWTH = 10.0
MAX_CHUNKS = 64


@dataclass(frozen=True)
class Trajectory:
    """
    Accepted integration steps.

    ``states`` has one row per time: populations for a rate matrix,
    vec(rho) for a Liouvillian.
    """

    times: np.ndarray
    states: np.ndarray
    dimension: int
    is_density_matrix: bool = False

    def populations(self) -> np.ndarray:
        """Populations at every time, shape (n_times, d)."""
        if self.is_density_matrix:
            return self.states[:, population_indices(self.dimension)].real
        return self.states.real

    @property
    def min_population(self) -> float:
        return float(self.populations().min())

    @property
    def max_trace_error(self) -> float:
        return float(np.abs(self.populations().sum(axis=1) - 1.0).max())

    def final_state(self) -> Union[PopulationVector, DensityMatrix]:
        if self.is_density_matrix:
            return DensityMatrix(unvectorize(self.states[-1], self.dimension))
        return PopulationVector(self.states[-1].real)


def _initial_vector(generator: Generator, initial) -> np.ndarray:
    if isinstance(generator, Liouvillian):
        rho = np.asarray(getattr(initial, "matrix", initial), dtype=complex)
        d = generator.dimension
        if rho.shape != (d, d):
            raise InvalidArgumentError(f"Initial density matrix must be {d}x{d}")
        y0 = vectorize(rho)
        trace = np.trace(rho).real
    else:
        y0 = np.array(getattr(initial, "values", initial), dtype=float)
        if y0.shape != (generator.dimension,):
            raise InvalidArgumentError(
                f"Initial populations must have length {generator.dimension}"
            )
        trace = y0.sum()
    if abs(trace - 1.0) > 1e-10:
        raise InvalidArgumentError(f"Initial state has trace {trace}, expected 1")
    return y0


def _solve(A: np.ndarray, y0: np.ndarray, t_final: float, method: str, rtol: float,
           atol: float, t_eval: Optional[Sequence[float]] = None):
    def rhs(t, y):
        return A @ y

    options = {}
    if method in IMPLICIT_METHODS:
        options["jac"] = A

    return solve_ivp(
        rhs,
        (0.0, t_final),
        y0,
        method=method,
        t_eval=t_eval,
        rtol=rtol,
        atol=atol,
        **options,
    )


def propagate_trajectory(
    generator: Generator,
    initial,
    t_final: float,
    rtol: float = 1e-8,
    atol: float = 1e-12,
    method: str = "RK45",
    t_eval: Optional[Sequence[float]] = None,
) -> Trajectory:
    """
    Integrate d/dt y = G y from t = 0 to ``t_final``.

    Args:
        generator: RateMatrix (populations) or Liouvillian (density matrix)
        initial: Initial populations or density matrix, trace 1
        t_final: End time in hbar / eV
        rtol: Relative tolerance of the adaptive step control
        atol: Absolute tolerance
        method: solve_ivp method; "RK45" is the explicit Dormand-Prince 4(5) pair
        t_eval: Times to record; defaults to every accepted step

    Returns:
        Trajectory

    Raises:
        IntegrationError: If the integrator stops early or the trace drifts
    """
    if t_final < 0:
        raise InvalidArgumentError(f"t_final must be non-negative, got {t_final}")

    is_density_matrix = isinstance(generator, Liouvillian)
    d = generator.dimension
    y0 = _initial_vector(generator, initial)

    if t_final == 0:
        return Trajectory(np.array([0.0]), y0[np.newaxis, :], d, is_density_matrix)

    A = np.asarray(generator.matrix)
    if is_density_matrix:
        A = A.astype(complex)

    solution = _solve(A, y0, t_final, method, rtol, atol, t_eval)
    if solution.status == -1:
        t_reached = float(solution.t[-1]) if solution.t.size else 0.0
        raise IntegrationError(f"Integration failed: {solution.message}", t_reached)

    trajectory = Trajectory(solution.t, solution.y.T, d, is_density_matrix)

    trace_error = trajectory.max_trace_error
    if trace_error > TRACE_TOLERANCE:
        raise IntegrationError(f"Trace drifted by {trace_error:.3e}", float(solution.t[-1]))

    min_population = trajectory.min_population
    if min_population < -POSITIVITY_TOLERANCE:
        logger.warning(f"Propagated population dipped to {min_population:.3e}")

    logger.debug(f"Propagated to t={t_final:.6g} in {solution.t.size} steps ({method})")
    return trajectory


def propagate(
    generator: Generator,
    initial,
    t_final: float,
    rtol: float = 1e-8,
    method: str = "RK45",
) -> Union[PopulationVector, DensityMatrix]:
    """State at ``t_final``; see propagate_trajectory."""
    trajectory = propagate_trajectory(generator, initial, t_final, rtol=rtol, method=method)
    return trajectory.final_state()


def ground_state_populations(d: int) -> np.ndarray:
    """All population in the ground state b."""
    p0 = np.zeros(d)
    p0[0] = 1.0
    return p0


def slowest_relaxation_rate(generator: RateMatrix) -> float:
    """
    Smallest nonzero decay rate -Re(lambda) of the generator's spectrum.

    Eigenvalues within ZERO_EIGENVALUE * max_rate of zero are the stationary
    modes. Returns 0.0 if every mode is stationary.
    """
    rates = -np.linalg.eigvals(generator.matrix).real
    decaying = rates[rates > ZERO_EIGENVALUE * generator.max_rate]
    return float(decaying.min()) if decaying.size else 0.0


def _renormalized(y: np.ndarray) -> tuple:
    p = np.clip(y.real, 0.0, None)
    total = p.sum()
    return p / total, abs(total - 1.0)


def steady_state_by_propagation(generator: Generator, tol: float = 1e-12) -> PopulationVector:
    """
    Relax the all-ground state until it stops moving.

    Integrates with the L-stable Radau method in chunks that grow tenfold,
    restarting each chunk at t = 0 from the clipped and renormalised state.
    Stops once ||M p||_inf <= ``tol`` times the largest rate and the elapsed
    time covers SETTLE_FACTOR relaxation times of the slowest mode.

    Raises:
        IntegrationError: If a chunk makes no progress
        NonConvergenceError: If the horizon is reached without settling
    """
    if isinstance(generator, Liouvillian):
        generator = RateMatrix(generator.population_block())

    d = generator.dimension
    p = ground_state_populations(d)
    min_rate = generator.min_nonzero_rate
    if min_rate == 0:
        return PopulationVector(p)

    A = np.asarray(generator.matrix, dtype=float)
    threshold = tol * generator.max_rate
    gap = slowest_relaxation_rate(generator) or min_rate
    settle_time = SETTLE_FACTOR / gap
    horizon = max(1e4 / min_rate, settle_time)

    elapsed = 0.0
    chunk = 1.0 / generator.max_rate
    residual = float(np.abs(A @ p).max())
    for _ in range(MAX_CHUNKS):
        span = min(chunk, horizon - elapsed)
        solution = _solve(A, p, span, method="Radau", rtol=1e-10, atol=1e-14)
        reached = float(solution.t[-1])
        if reached <= 0.0:
            raise IntegrationError(f"Integration failed: {solution.message}", elapsed)
        if solution.status == -1:
            logger.debug(f"Chunk stopped at t={reached:.3e} of {span:.3e}: {solution.message}")

        elapsed += reached
        p, drift = _renormalized(solution.y[:, -1])
        if drift > TRACE_TOLERANCE:
            logger.debug(f"Renormalised trace drift {drift:.3e} at t={elapsed:.3e}")

        residual = float(np.abs(A @ p).max())
        if residual <= threshold and elapsed >= settle_time:
            logger.debug(f"Settled at t={elapsed:.3e}, residual {residual:.3e}")
            return PopulationVector(p)
        if elapsed >= horizon:
            break
        chunk *= CHUNK_GROWTH

    raise NonConvergenceError(f"No steady state within horizon t={horizon:.3e}", residual)
