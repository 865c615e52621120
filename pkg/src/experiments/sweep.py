"""
Load sweeps: the device characteristic traced by varying the load rate Gamma.

Voltage and current are both outputs of the steady state at each Gamma.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from ..errors import (
    AmbiguousVoltageError,
    InvalidArgumentError,
    RootFindingError,
    SolverError,
    VoltageOutOfRangeError,
)
from ..generator.rate_matrix import rate_matrix
from ..model.models import PhotocellConfig
from ..observables.device import OperatingPoint, operating_point
from ..solver.steady_state import PopulationVector, steady_state_populations
from ..utils.serialization import sha256_hex

logger = logging.getLogger(__name__)

DEFAULT_GRID_BOUNDS = (1e-12, 1e2)
DEFAULT_GRID_POINTS = 200
OPEN_CIRCUIT_LADDER = (1e-12, 1e-13, 1e-14)
LADDER_SHIFT = 1e-3
MAX_LADDER_SHIFTS = 30
LINEAR_RTOL = 0.01
FLAT_STEP = 1e-13
DROP_THRESHOLD = 1e-30
BISECTION_XTOL = 1e-14


def default_gamma_grid(
    lo: float = DEFAULT_GRID_BOUNDS[0],
    hi: float = DEFAULT_GRID_BOUNDS[1],
    count: int = DEFAULT_GRID_POINTS,
) -> np.ndarray:
    """Log-spaced load rates in eV."""
    if not (0 < lo < hi) or count < 1:
        raise InvalidArgumentError(f"Invalid grid {lo}:{hi}:{count}")
    if count == 1:
        return np.array([lo])
    return np.logspace(math.log10(lo), math.log10(hi), count)


def config_fingerprint(cfg: PhotocellConfig) -> str:
    """SHA-256 over every physical and numerical parameter of ``cfg``."""
    return sha256_hex(cfg.to_dict())


def solve_populations(cfg: PhotocellConfig) -> PopulationVector:
    """Steady-state populations of ``cfg`` with its own solver settings."""
    tolerances = cfg.solver_tolerances
    return steady_state_populations(
        rate_matrix(cfg),
        method=tolerances.steady_state_method,
        residual_tol=tolerances.steady_state_residual,
    )


def solve_operating_point(cfg: PhotocellConfig, Gamma: float) -> OperatingPoint:
    """Operating point of ``cfg`` loaded with ``Gamma``."""
    loaded = cfg.with_load(Gamma)
    try:
        return operating_point(loaded, solve_populations(loaded))
    except SolverError as e:
        e.args = (f"{e} (Gamma={Gamma:.6g} eV)",)
        raise


@dataclass(frozen=True)
class OpenCircuitEstimate:
    """
    Open-circuit voltage extrapolated to Gamma -> 0.

    ``value`` is None when the raw sequence was not monotone and no
    extrapolated claim is made.
    """

    gammas: Tuple[float, ...]
    raw_voltages: Tuple[float, ...]
    value: Optional[float]
    uncertainty: Optional[float]

    @property
    def extrapolated(self) -> bool:
        return self.value is not None

    @property
    def best(self) -> float:
        """Extrapolated value, else the raw voltage at the smallest Gamma."""
        return self.value if self.value is not None else self.raw_voltages[-1]

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "V_oc": self.value,
            "uncertainty": self.uncertainty,
            "extrapolated": self.extrapolated,
            "ladder_Gamma_eV": list(self.gammas),
            "ladder_V_volts": list(self.raw_voltages),
        }


@dataclass(frozen=True)
class SweepResult:
    """Operating points in ascending Gamma plus the derived markers."""

    config: PhotocellConfig
    fingerprint: str
    points: Tuple[OperatingPoint, ...]
    dropped: Tuple[dict, ...] = ()
    negative_voltage_count: int = 0
    v_oc: Optional[OpenCircuitEstimate] = None
    mpp: Optional[OperatingPoint] = None
    warnings: Tuple[str, ...] = field(default=())

    @property
    def donor_count(self) -> int:
        return self.config.donor_count

    def gammas(self) -> np.ndarray:
        return np.array([point.Gamma for point in self.points])

    def voltages(self) -> np.ndarray:
        return np.array([point.V for point in self.points])

    def currents(self) -> np.ndarray:
        return np.array([point.j for point in self.points])

    def normalized_currents(self) -> np.ndarray:
        return np.array([point.j_norm for point in self.points])

    def powers(self) -> np.ndarray:
        return np.array([point.P for point in self.points])

    def markers(self) -> dict:
        """V_oc and MPP for reports; absent markers are None."""
        return {
            "donor_count": self.donor_count,
            "config_fingerprint": self.fingerprint,
            "open_circuit": self.v_oc.to_dict() if self.v_oc else None,
            "mpp": self.mpp.to_dict() if self.mpp else None,
            "points": len(self.points),
            "dropped": len(self.dropped),
            "negative_voltage_count": self.negative_voltage_count,
            "warnings": list(self.warnings),
        }


def _check_grid(gamma_grid: Sequence[float]) -> np.ndarray:
    grid = np.asarray(gamma_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidArgumentError("Gamma grid must be a nonempty list")
    if not (grid > 0).all():
        raise InvalidArgumentError("Gamma grid must be positive")
    if not (np.diff(grid) > 0).all():
        raise InvalidArgumentError("Gamma grid must be strictly increasing")
    return grid


def map_ordered(function, items, workers: int) -> list:
    """Apply ``function`` to ``items`` preserving order, optionally on a thread pool."""
    if workers <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, items))


def _neville_at_zero(xs: Sequence[float], ys: Sequence[float]) -> List[float]:
    """
    Successive polynomial extrapolations to x = 0.

    Element k uses the last k + 1 points (the smallest x values).
    """
    estimates = []
    n = len(xs)
    for k in range(n):
        x = list(xs[n - 1 - k :])
        tableau = list(ys[n - 1 - k :])
        for level in range(1, len(x)):
            for i in range(len(x) - level):
                tableau[i] = (x[i + level] * tableau[i] - x[i] * tableau[i + 1]) / (
                    x[i + level] - x[i]
                )
        estimates.append(tableau[0])
    return estimates


def _is_linear(gammas: Sequence[float], voltages: Sequence[float]) -> bool:
    """Voltage steps along the ladder scale like the load steps."""
    if len(gammas) < 3:
        return True
    expected = (gammas[0] - gammas[1]) / (gammas[1] - gammas[2])
    observed = (voltages[1] - voltages[0]) / (voltages[2] - voltages[1])
    return abs(observed / expected - 1.0) <= LINEAR_RTOL


def open_circuit_voltage(
    cfg: PhotocellConfig, ladder: Sequence[float] = OPEN_CIRCUIT_LADDER
) -> OpenCircuitEstimate:
    """
    Voltage in the Gamma -> 0 limit by Richardson extrapolation.

    While V(Gamma) on the ladder is not yet linear in Gamma the whole ladder is
    moved down three decades, so a weakly driven cell extrapolates from below
    its own open-circuit knee.

    Args:
        cfg: Photocell configuration
        ladder: Decreasing load rates to extrapolate from

    Returns:
        OpenCircuitEstimate; uncertainty is the change of the last extrapolation step

    Raises:
        InvalidArgumentError: If the ladder has fewer than two load rates
    """
    gammas = tuple(float(g) for g in ladder)
    if len(gammas) < 2:
        raise InvalidArgumentError(f"Open-circuit ladder needs two load rates, got {len(gammas)}")

    for _ in range(MAX_LADDER_SHIFTS + 1):
        voltages = tuple(solve_operating_point(cfg, g).V for g in gammas)
        steps = np.diff(voltages)
        if np.abs(steps).max() <= FLAT_STEP:
            return OpenCircuitEstimate(
                gammas, voltages, voltages[-1], float(abs(voltages[-1] - voltages[0]))
            )

        # V rises as Gamma falls; anything else means the ladder is not asymptotic
        if not (steps > 0).all():
            logger.warning(
                f"Open-circuit ladder not monotone for N={cfg.donor_count}: {list(voltages)}"
            )
            return OpenCircuitEstimate(gammas, voltages, None, None)

        if _is_linear(gammas, voltages):
            break
        logger.debug(f"Ladder from {gammas[0]:.1e} eV is above the knee, shifting down")
        gammas = tuple(g * LADDER_SHIFT for g in gammas)
    else:
        logger.warning(f"Open-circuit ladder never became linear for N={cfg.donor_count}")
        return OpenCircuitEstimate(gammas, voltages, None, None)

    estimates = _neville_at_zero(gammas, voltages)
    value = estimates[-1]
    uncertainty = abs(estimates[-1] - estimates[-2])
    logger.debug(f"V_oc(N={cfg.donor_count}) = {value:.12f} +- {uncertainty:.3e} V")
    return OpenCircuitEstimate(gammas, voltages, value, uncertainty)


def _solve_sweep_point(cfg: PhotocellConfig, Gamma: float) -> Tuple[float, PopulationVector]:
    return Gamma, solve_populations(cfg.with_load(Gamma))


def jv_sweep(
    cfg: PhotocellConfig,
    gamma_grid: Optional[Sequence[float]] = None,
    workers: int = 1,
    ladder: Sequence[float] = OPEN_CIRCUIT_LADDER,
) -> SweepResult:
    """
    Solve the steady state at every Gamma of the grid.

    Points with p_alpha or p_beta below 1e-30 and points with negative voltage are
    left out and recorded in ``dropped``. With at least three points the open-circuit
    voltage and the maximum power point are attached.

    Args:
        cfg: Photocell configuration (its own Gamma is ignored)
        gamma_grid: Positive, strictly increasing load rates; default grid when None
        workers: Thread-pool size for the independent steady-state solves
        ladder: Load rates for the open-circuit extrapolation

    Returns:
        SweepResult ordered by Gamma regardless of completion order
    """
    grid = _check_grid(default_gamma_grid() if gamma_grid is None else gamma_grid)
    logger.info(f"Sweeping {grid.size} load rates for N={cfg.donor_count}")

    solved = map_ordered(lambda g: _solve_sweep_point(cfg, g), [float(g) for g in grid], workers)

    points: List[OperatingPoint] = []
    dropped: List[dict] = []
    negative = 0
    for Gamma, p in solved:
        if p.alpha < DROP_THRESHOLD or p.beta < DROP_THRESHOLD:
            logger.info(
                f"Dropping Gamma={Gamma:.6g}: p_alpha={p.alpha:.3e}, p_beta={p.beta:.3e}"
            )
            dropped.append(
                {"Gamma_eV": Gamma, "reason": "vanishing population",
                 "p_alpha": p.alpha, "p_beta": p.beta}
            )
            continue
        point = operating_point(cfg.with_load(Gamma), p)
        if point.V < 0:
            negative += 1
            dropped.append({"Gamma_eV": Gamma, "reason": "negative voltage", "V_volts": point.V})
            continue
        points.append(point)

    sweep = SweepResult(
        config=cfg,
        fingerprint=config_fingerprint(cfg),
        points=tuple(points),
        dropped=tuple(dropped),
        negative_voltage_count=negative,
    )
    if len(points) < 3:
        return sweep

    warnings = []
    v_oc = open_circuit_voltage(cfg, ladder)
    mpp = max_power_point(sweep)
    if mpp.Gamma in (points[0].Gamma, points[-1].Gamma):
        warnings.append("maximum power point at grid boundary")
    return SweepResult(
        config=cfg,
        fingerprint=sweep.fingerprint,
        points=sweep.points,
        dropped=sweep.dropped,
        negative_voltage_count=negative,
        v_oc=v_oc,
        mpp=mpp,
        warnings=tuple(warnings),
    )


def max_power_point(sweep: SweepResult) -> OperatingPoint:
    """
    Maximum of P = j V along the sweep.

    The grid argmax is refined by golden-section search in ln Gamma between its
    two neighbours. An argmax on the grid boundary is returned as is with a warning.

    Raises:
        InvalidArgumentError: If the sweep has fewer than three points
    """
    points = sweep.points
    if len(points) < 3:
        raise InvalidArgumentError(
            f"Maximum power point needs at least 3 points, got {len(points)}"
        )

    powers = sweep.powers()
    k = int(np.argmax(powers))
    if k == 0 or k == len(points) - 1:
        logger.warning(
            f"Maximum power at grid boundary Gamma={points[k].Gamma:.6g} eV; widen the grid"
        )
        return points[k]

    cfg = sweep.config
    bracket = tuple(math.log(points[i].Gamma) for i in (k - 1, k, k + 1))
    try:
        result = minimize_scalar(
            lambda x: -solve_operating_point(cfg, math.exp(x)).P,
            bracket=bracket,
            method="golden",
            tol=1e-10,
        )
    except ValueError as e:
        logger.warning(f"Golden-section refinement skipped: {e}")
        return points[k]

    refined = solve_operating_point(cfg, math.exp(result.x))
    if refined.P < points[k].P:
        return points[k]
    return refined


def _voltage_brackets(gammas: np.ndarray, voltages: np.ndarray, target: float) -> List[int]:
    offset = voltages - target
    return [i for i in range(len(offset) - 1) if offset[i] * offset[i + 1] < 0]


def gamma_for_voltage(
    cfg: PhotocellConfig,
    V_target: float,
    sweep: Optional[SweepResult] = None,
) -> float:
    """
    Load rate at which the cell sits at ``V_target``.

    Brackets the target on the sweep grid, then bisects in ln Gamma.

    Args:
        cfg: Photocell configuration
        V_target: Voltage in V, 0 < V_target < V_oc
        sweep: Sweep of ``cfg`` to bracket on; the default grid is swept when None

    Returns:
        Gamma* with |V(Gamma*) - V_target| <= root_find_vtol

    Raises:
        VoltageOutOfRangeError: If V_target is not reachable
        AmbiguousVoltageError: If V(Gamma) crosses the target more than once on the grid
    """
    vtol = cfg.solver_tolerances.root_find_vtol
    if sweep is None:
        sweep = jv_sweep(cfg)
    v_oc = (sweep.v_oc or open_circuit_voltage(cfg)).best
    if not 0 < V_target < v_oc:
        raise VoltageOutOfRangeError(
            f"Target {V_target:.6g} V outside (0, V_oc={v_oc:.6g} V) for N={cfg.donor_count}"
        )

    gammas = sweep.gammas()
    voltages = sweep.voltages()
    if gammas.size == 0:
        raise VoltageOutOfRangeError("Sweep has no usable points")

    if not (np.diff(voltages) < 0).all():
        logger.warning("V(Gamma) is not strictly decreasing on the grid; enumerating brackets")

    hits = np.flatnonzero(np.abs(voltages - V_target) <= vtol)
    if hits.size == 1:
        return float(gammas[hits[0]])
    if hits.size > 1:
        raise AmbiguousVoltageError(V_target, [(float(gammas[i]), float(gammas[i])) for i in hits])

    brackets = _voltage_brackets(gammas, voltages, V_target)
    if len(brackets) > 1:
        raise AmbiguousVoltageError(
            V_target, [(float(gammas[i]), float(gammas[i + 1])) for i in brackets]
        )

    if brackets:
        lo, hi = math.log(gammas[brackets[0]]), math.log(gammas[brackets[0] + 1])
    elif V_target > voltages[0]:
        # Between the first grid point and V_oc: walk the load down
        hi = math.log(gammas[0])
        lo = hi
        while solve_operating_point(cfg, math.exp(lo)).V <= V_target:
            lo -= math.log(10.0)
            if lo < math.log(1e-40):
                raise VoltageOutOfRangeError(
                    f"Target {V_target:.6g} V not reached below Gamma={gammas[0]:.3g} eV"
                )
    else:
        raise VoltageOutOfRangeError(
            f"Target {V_target:.6g} V below the sweep minimum {voltages.min():.6g} V"
        )

    def offset(x: float) -> float:
        return solve_operating_point(cfg, math.exp(x)).V - V_target

    x_star = bisect(offset, lo, hi, xtol=BISECTION_XTOL)
    Gamma_star = math.exp(x_star)

    residual = abs(offset(x_star))
    if residual > vtol:
        raise RootFindingError(
            f"Bisection ended {residual:.3e} V from the {V_target:.6g} V target"
        )
    return Gamma_star
