# src/utils/__init__.py
"""Shared helpers."""

from .serialization import canonical_json_bytes, format_float, sha256_hex

__all__ = ["canonical_json_bytes", "format_float", "sha256_hex"]
