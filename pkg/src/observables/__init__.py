# src/observables/__init__.py
"""Current, voltage and power of the photocell."""

from .device import (
    OperatingPoint,
    current,
    normalized_current,
    operating_point,
    power,
    voltage,
)

__all__ = [
    "OperatingPoint",
    "current",
    "normalized_current",
    "operating_point",
    "power",
    "voltage",
]
