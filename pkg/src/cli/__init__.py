# src/cli/__init__.py
"""Command-line orchestration: manifests, jobs, writers and output audit."""

from .audit import audit_directory, audit_sweep_csv
from .jobs import JobRunner, run_subcommand
from .manifest import SUBCOMMANDS, RunManifest
from .writers import atomic_write_bytes, write_csv, write_json

__all__ = [
    "SUBCOMMANDS",
    "JobRunner",
    "RunManifest",
    "atomic_write_bytes",
    "audit_directory",
    "audit_sweep_csv",
    "run_subcommand",
    "write_csv",
    "write_json",
]
