"""
Calibration of the hot-bath occupation against voltage landmarks.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..errors import InvalidArgumentError, PhotocellError
from ..model.defaults import effective_hot_temperature
from ..model.models import PhotocellConfig
from .sweep import OPEN_CIRCUIT_LADDER, jv_sweep, map_ordered

logger = logging.getLogger(__name__)

SCAN_BOUNDS = (1e-6, 1e2)
SCAN_POINTS = 81
FLAT_TOLERANCE = 1e-4


@dataclass(frozen=True)
class CalibrationTargets:
    """Voltage landmarks and their weights in the least-squares objective."""

    v_oc: float = 1.67
    v_mpp: float = 1.35
    w_oc: float = 1.0
    w_mpp: float = 1.0

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {"V_oc": self.v_oc, "V_mpp": self.v_mpp, "w_oc": self.w_oc, "w_mpp": self.w_mpp}


@dataclass(frozen=True)
class CalibrationSample:
    """Objective at one hot occupation; voltages are None when undefined."""

    n_h: float
    objective: float
    v_oc: Optional[float] = None
    v_mpp: Optional[float] = None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "n_h": self.n_h,
            "objective": self.objective if math.isfinite(self.objective) else None,
            "V_oc": self.v_oc,
            "V_mpp": self.v_mpp,
        }


@dataclass(frozen=True)
class CalibrationResult:
    """Best hot occupation, its residual and the scan behind it."""

    best: CalibrationSample
    targets: CalibrationTargets
    effective_T_h: float
    scanned: Tuple[CalibrationSample, ...]
    indeterminate: bool

    @property
    def n_h(self) -> float:
        return self.best.n_h

    @property
    def objective(self) -> float:
        return self.best.objective

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "n_h": self.best.n_h,
            "objective": self.best.objective,
            "V_oc": self.best.v_oc,
            "V_mpp": self.best.v_mpp,
            "residual_V_oc": (self.best.v_oc - self.targets.v_oc) if self.best.v_oc is not None else None,
            "residual_V_mpp": (self.best.v_mpp - self.targets.v_mpp) if self.best.v_mpp is not None else None,
            "effective_T_h_K": self.effective_T_h,
            "targets": self.targets.to_dict(),
            "indeterminate": self.indeterminate,
            "scan": [sample.to_dict() for sample in self.scanned],
        }


def calibration_objective(
    template: PhotocellConfig,
    n_h: float,
    targets: CalibrationTargets = CalibrationTargets(),
    grid: Optional[Sequence[float]] = None,
    ladder: Sequence[float] = OPEN_CIRCUIT_LADDER,
) -> CalibrationSample:
    """
    w_oc (V_oc - target)^2 + w_mpp (V_mpp - target)^2 at hot occupation ``n_h``.

    The objective is infinite when either voltage cannot be evaluated.
    """
    cfg = template.with_hot_occupation(n_h)
    try:
        sweep = jv_sweep(cfg, grid, ladder=ladder)
    except PhotocellError as e:
        logger.debug(f"Objective undefined at n_h={n_h:.6g}: {e}")
        return CalibrationSample(n_h, math.inf)
    if sweep.v_oc is None or sweep.mpp is None:
        return CalibrationSample(n_h, math.inf)

    v_oc = sweep.v_oc.best
    v_mpp = sweep.mpp.V

    objective = targets.w_oc * (v_oc - targets.v_oc) ** 2 + targets.w_mpp * (
        v_mpp - targets.v_mpp
    ) ** 2
    return CalibrationSample(n_h, objective, v_oc, v_mpp)


def calibrate_hot_occupation(
    template: PhotocellConfig,
    targets: CalibrationTargets = CalibrationTargets(),
    bounds: Tuple[float, float] = SCAN_BOUNDS,
    n_points: int = SCAN_POINTS,
    grid: Optional[Sequence[float]] = None,
    workers: int = 1,
    ladder: Sequence[float] = OPEN_CIRCUIT_LADDER,
) -> CalibrationResult:
    """
    Find the hot occupation that best reproduces the target voltages.

    Scans n_h log-spaced over ``bounds``, then refines the best scan point by
    bounded minimisation in log10 n_h between its neighbours.

    Raises:
        InvalidArgumentError: If a target lies outside (0, E_alpha - E_beta + 1 V)
    """
    ceiling = template.levels.E_alpha - template.levels.E_beta + 1.0
    for name, value in (("V_oc", targets.v_oc), ("V_mpp", targets.v_mpp)):
        if not 0 < value < ceiling:
            raise InvalidArgumentError(f"Target {name}={value} V outside (0, {ceiling} V)")

    candidates = np.logspace(math.log10(bounds[0]), math.log10(bounds[1]), n_points)
    logger.info(
        f"Calibrating n_h over {n_points} points in [{bounds[0]:.0e}, {bounds[1]:.0e}] "
        f"for N={template.donor_count}"
    )
    scanned = map_ordered(
        lambda n: calibration_objective(template, float(n), targets, grid, ladder), candidates, workers
    )

    finite = [sample.objective for sample in scanned if math.isfinite(sample.objective)]
    if not finite:
        raise InvalidArgumentError("Calibration objective undefined on the whole scan")
    indeterminate = max(finite) - min(finite) <= FLAT_TOLERANCE
    if indeterminate:
        logger.warning("Calibration indeterminate: objective flat over the scan")

    k = int(np.argmin([sample.objective for sample in scanned]))
    best = scanned[k]
    lo = math.log10(candidates[max(k - 1, 0)])
    hi = math.log10(candidates[min(k + 1, len(candidates) - 1)])
    if hi > lo:
        result = minimize_scalar(
            lambda x: calibration_objective(template, 10.0**x, targets, grid, ladder).objective,
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-6},
        )
        refined = calibration_objective(template, 10.0**result.x, targets, grid, ladder)
        if refined.objective < best.objective:
            best = refined

    logger.info(
        f"Calibrated n_h={best.n_h:.6g}: objective={best.objective:.6g}, "
        f"V_oc={best.v_oc}, V_mpp={best.v_mpp}"
    )
    return CalibrationResult(
        best=best,
        targets=targets,
        effective_T_h=effective_hot_temperature(
            best.n_h, template.levels.E_a[0] - template.levels.E_b
        ),
        scanned=tuple(scanned),
        indeterminate=indeterminate,
    )
