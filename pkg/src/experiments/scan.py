"""
Donor-count scans at a fixed operating voltage.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgumentError, PhotocellError
from ..model.defaults import MAX_DONORS
from ..model.models import PhotocellConfig
from ..observables.device import OperatingPoint
from .sweep import (
    OPEN_CIRCUIT_LADDER,
    gamma_for_voltage,
    jv_sweep,
    map_ordered,
    solve_operating_point,
)

logger = logging.getLogger(__name__)

# Peak normalised current and MPP powers quoted for the ring photocell
REFERENCE_PEAK_CURRENT = 3036.61
REFERENCE_MPP_POWERS = {3: 3371.0, 6: 3829.0, 9: 4011.0}
REFERENCE_RATIO_TOLERANCE = 0.15


@dataclass(frozen=True)
class ScanEntry:
    """Result for one donor count; ``error`` is set when this N failed."""

    donor_count: int
    Gamma_star: Optional[float] = None
    j_norm: Optional[float] = None
    V: Optional[float] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "N": self.donor_count,
            "Gamma_star_eV": self.Gamma_star,
            "j_norm": self.j_norm,
            "V_volts": self.V,
            "error": self.error,
        }


@dataclass(frozen=True)
class DonorScan:
    """Entries ordered by donor count."""

    V_fixed: float
    entries: Tuple[ScanEntry, ...]

    def successful(self) -> Tuple[ScanEntry, ...]:
        return tuple(entry for entry in self.entries if entry.ok)

    def failures(self) -> Tuple[ScanEntry, ...]:
        return tuple(entry for entry in self.entries if not entry.ok)

    def as_pairs(self) -> Tuple[Tuple[int, float], ...]:
        """(N, j_norm) for every successful entry."""
        return tuple((entry.donor_count, entry.j_norm) for entry in self.successful())


def _scan_one(
    template: PhotocellConfig,
    donor_count: int,
    V_fixed: float,
    grid: Optional[Sequence[float]],
    ladder: Sequence[float],
) -> ScanEntry:
    try:
        cfg = template.resized(donor_count)
        sweep = jv_sweep(cfg, grid, ladder=ladder)
        Gamma_star = gamma_for_voltage(cfg, V_fixed, sweep=sweep)
        point = solve_operating_point(cfg, Gamma_star)
        logger.info(f"N={donor_count}: Gamma*={Gamma_star:.6g} eV, j_norm={point.j_norm:.6g}")
        return ScanEntry(donor_count, Gamma_star, point.j_norm, point.V)

    except PhotocellError as e:
        logger.error(f"Donor scan failed for N={donor_count}: {e}")
        # Continue with next donor count
        return ScanEntry(donor_count, error=f"{type(e).__name__}: {e}")


def donor_scan(
    template: PhotocellConfig,
    donor_counts: Sequence[int],
    V_fixed: float,
    workers: int = 1,
    grid: Optional[Sequence[float]] = None,
    ladder: Sequence[float] = OPEN_CIRCUIT_LADDER,
) -> DonorScan:
    """
    Normalised current at ``V_fixed`` for each donor count.

    Args:
        template: Configuration whose donor 1 parameters are replicated N times
        donor_counts: Donor counts within 1..16
        V_fixed: Operating voltage in V
        workers: Thread-pool size; results are ordered by N either way
        grid: Load grid used to bracket the voltage
        ladder: Load rates for the open-circuit extrapolation

    Returns:
        DonorScan; failed donor counts carry their error and the scan continues
    """
    counts = sorted(set(int(n) for n in donor_counts))
    if not counts:
        raise InvalidArgumentError("Donor range is empty")
    if counts[0] < 1 or counts[-1] > MAX_DONORS:
        raise InvalidArgumentError(f"Donor counts must lie within 1..{MAX_DONORS}, got {counts}")

    logger.info(f"Scanning N={counts[0]}..{counts[-1]} at V={V_fixed} V")
    entries = map_ordered(lambda n: _scan_one(template, n, V_fixed, grid, ladder), counts, workers)

    scan = DonorScan(V_fixed=V_fixed, entries=tuple(entries))
    logger.info(
        f"Donor scan completed: {len(scan.successful())} succeeded, "
        f"{len(scan.failures())} failed"
    )
    return scan


@dataclass(frozen=True)
class SuperlinearityDiagnostics:
    """Growth of j_norm with N."""

    donor_counts: Tuple[int, ...]
    j_norm: Tuple[float, ...]
    first_differences: Tuple[float, ...]
    second_differences: Tuple[float, ...]
    ratio: Optional[float]
    linear_ratio: Optional[float]
    classification: str
    strictly_increasing: bool
    saturating_from: Optional[int]
    peak_current_ratio: Optional[float]

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "N": list(self.donor_counts),
            "j_norm": list(self.j_norm),
            "first_differences": list(self.first_differences),
            "second_differences": list(self.second_differences),
            "ratio_j_max_over_j_min": self.ratio,
            "ratio_N_max_over_N_min": self.linear_ratio,
            "classification": self.classification,
            "strictly_increasing": self.strictly_increasing,
            "saturating_from_N": self.saturating_from,
            "reference_peak_current_over_j_norm_N9": self.peak_current_ratio,
        }


def superlinearity_diagnostics(scan: DonorScan) -> SuperlinearityDiagnostics:
    """
    Differences and growth ratio of the scan.

    ``classification`` compares j(N_max)/j(N_min) with N_max/N_min; ``saturating_from``
    is the smallest N from which the forward differences keep shrinking.
    """
    pairs = scan.as_pairs()
    counts = tuple(n for n, _ in pairs)
    values = np.array([j for _, j in pairs], dtype=float)
    first = np.diff(values)
    second = np.diff(first)

    ratio = linear_ratio = None
    classification = "undetermined"
    if len(values) >= 2 and values[0] > 0:
        ratio = float(values[-1] / values[0])
        linear_ratio = counts[-1] / counts[0]
        if np.isclose(ratio, linear_ratio, rtol=1e-9, atol=0.0):
            classification = "linear"
        elif ratio > linear_ratio:
            classification = "superlinear"
        else:
            classification = "sublinear"

    saturating_from = None
    for start in range(len(second)):
        if (second[start:] < 0).all():
            saturating_from = counts[start]
            break

    by_n = dict(pairs)
    peak_ratio = REFERENCE_PEAK_CURRENT / by_n[9] if by_n.get(9) else None
    if peak_ratio is not None:
        logger.info(f"Reference peak current / j_norm(N=9) = {peak_ratio:.6g}")

    return SuperlinearityDiagnostics(
        donor_counts=counts,
        j_norm=tuple(float(v) for v in values),
        first_differences=tuple(float(v) for v in first),
        second_differences=tuple(float(v) for v in second),
        ratio=ratio,
        linear_ratio=linear_ratio,
        classification=classification,
        strictly_increasing=bool((first > 0).all()),
        saturating_from=saturating_from,
        peak_current_ratio=peak_ratio,
    )


def power_ratio_report(mpps: Dict[int, OperatingPoint]) -> dict:
    """
    Compare P_MPP(9) / P_MPP(3) with the reference power ratio.

    Reported, never enforced.
    """
    ordered = sorted(mpps)
    powers = [mpps[n].P for n in ordered]
    report = {
        "N": ordered,
        "P_mpp": powers,
        "ordered": all(a < b for a, b in zip(powers, powers[1:])),
        "ratio": None,
        "reference_ratio": REFERENCE_MPP_POWERS[9] / REFERENCE_MPP_POWERS[3],
        "tolerance": REFERENCE_RATIO_TOLERANCE,
        "within_tolerance": None,
    }
    if 3 in mpps and 9 in mpps and mpps[3].P > 0:
        ratio = mpps[9].P / mpps[3].P
        report["ratio"] = ratio
        report["within_tolerance"] = abs(ratio - report["reference_ratio"]) <= REFERENCE_RATIO_TOLERANCE
        logger.info(
            f"P_mpp(9)/P_mpp(3) = {ratio:.4f} vs reference {report['reference_ratio']:.4f}"
        )
    return report
