"""
System Hamiltonian of donors plus acceptor.
"""

import numpy as np

from ..errors import OutOfScopeError
from ..model.models import PhotocellConfig


def hamiltonian(cfg: PhotocellConfig) -> np.ndarray:
    """
    Diagonal Hamiltonian in eV, basis order [b, a_1 .. a_N, alpha, beta].

    Raises:
        OutOfScopeError: If the donors are coupled (J != 0)
    """
    if cfg.rates.J != 0:
        raise OutOfScopeError(
            f"Coupled donors (J={cfg.rates.J} eV) are not modelled; only J=0 is supported"
        )
    return np.diag(cfg.levels.energies())
