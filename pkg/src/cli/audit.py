"""
Round-trip audit of written sweep files.
"""

import csv
import logging
import math
from pathlib import Path
from typing import Dict, List

logger = logging.getLogger(__name__)

IDENTITY_TOLERANCE = 1e-12


def audit_sweep_csv(path: Path) -> List[str]:
    """
    Re-validate one sweep CSV.

    Checks that every row satisfies P = j * V and that Gamma strictly increases.

    Returns:
        Problems found; empty when the file is consistent
    """
    problems: List[str] = []
    previous_gamma = None

    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        missing = {"Gamma_eV", "V_volts", "j_natural", "P_natural"} - set(reader.fieldnames or [])
        if missing:
            return [f"{path.name}: missing columns {sorted(missing)}"]

        for line, row in enumerate(reader, start=2):
            try:
                gamma = float(row["Gamma_eV"])
                V = float(row["V_volts"])
                j = float(row["j_natural"])
                P = float(row["P_natural"])
            except ValueError as e:
                problems.append(f"{path.name}:{line}: unparsable value ({e})")
                continue

            if not math.isclose(P, j * V, rel_tol=IDENTITY_TOLERANCE, abs_tol=0.0):
                problems.append(f"{path.name}:{line}: P={P!r} differs from j*V={j * V!r}")
            if previous_gamma is not None and not gamma > previous_gamma:
                problems.append(f"{path.name}:{line}: Gamma not increasing")
            previous_gamma = gamma

    return problems


def audit_directory(out_dir: Path) -> Dict[str, List[str]]:
    """Audit every sweep_N*.csv under ``out_dir``."""
    out_dir = Path(out_dir)
    results = {}
    for path in sorted(out_dir.glob("sweep_N*.csv")):
        problems = audit_sweep_csv(path)
        for problem in problems:
            logger.error(problem)
        results[path.name] = problems
    logger.info(f"Audited {len(results)} sweep files in {out_dir}")
    return results
