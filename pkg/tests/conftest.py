"""Shared fixtures for the photocell test suite."""

from pathlib import Path

import numpy as np
import pytest

from src.model import default_config


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep PHOTOCELL_* overrides from the host out of the tests."""
    for name in ("PHOTOCELL_LOG_LEVEL", "PHOTOCELL_LOG_FORMAT", "PHOTOCELL_WORKERS"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def cfg1():
    return default_config(1)


@pytest.fixture
def cfg3():
    return default_config(3)


@pytest.fixture
def coarse_grid():
    """40 log-spaced load rates over the default range."""
    return np.logspace(-12, 2, 40)


@pytest.fixture
def write_config(tmp_path):
    """Write YAML text to a file and return its path."""

    def _write(text: str, name: str = "config.yaml") -> Path:
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write
