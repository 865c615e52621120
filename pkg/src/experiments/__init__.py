# src/experiments/__init__.py
"""Load sweeps, open-circuit and maximum-power markers, donor scans and calibration."""

from .calibration import (
    CalibrationResult,
    CalibrationSample,
    CalibrationTargets,
    calibrate_hot_occupation,
    calibration_objective,
)
from .scan import (
    DonorScan,
    ScanEntry,
    SuperlinearityDiagnostics,
    donor_scan,
    power_ratio_report,
    superlinearity_diagnostics,
)
from .sweep import (
    OpenCircuitEstimate,
    SweepResult,
    default_gamma_grid,
    gamma_for_voltage,
    jv_sweep,
    max_power_point,
    open_circuit_voltage,
    solve_operating_point,
    solve_populations,
)

__all__ = [
    "CalibrationResult",
    "CalibrationSample",
    "CalibrationTargets",
    "DonorScan",
    "OpenCircuitEstimate",
    "ScanEntry",
    "SuperlinearityDiagnostics",
    "SweepResult",
    "calibrate_hot_occupation",
    "calibration_objective",
    "default_gamma_grid",
    "donor_scan",
    "gamma_for_voltage",
    "jv_sweep",
    "max_power_point",
    "open_circuit_voltage",
    "power_ratio_report",
    "solve_operating_point",
    "solve_populations",
    "superlinearity_diagnostics",
]
