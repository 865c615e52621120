# file: src/utils/serialization.py
"""
Utility functions for stable text output of floats and JSON documents.
"""

import hashlib
import json
from typing import Any


def format_float(value: float) -> str:
    """
    Format a float with 17 significant digits.

    Args:
        value: Float to format

    Returns:
        String that parses back to the identical float (e.g., "0.10000000000000001")
    """
    return format(float(value), ".17g")


def canonical_json_bytes(obj: Any) -> bytes:
    """Serialize ``obj`` with sorted keys and two-space indent, newline-terminated."""
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True, allow_nan=False)
    return (text + "\n").encode("utf-8")


def sha256_hex(obj: Any) -> str:
    """SHA-256 of the canonical JSON of ``obj``."""
    return hashlib.sha256(canonical_json_bytes(obj)).hexdigest()
