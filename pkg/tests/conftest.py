"""Shared fixtures for the nodal-domain test suite."""

import numpy as np
import pytest

from classes.run_config import ENV_KEYS


@pytest.fixture
def rng() -> np.random.Generator:
    """A seeded generator so every run draws the same points."""
    return np.random.default_rng(20240611)


@pytest.fixture
def isolated_config(tmp_path, monkeypatch):
    """Run in an empty directory with no KK_NODAL_* variables set."""
    for variable in ENV_KEYS.values():
        monkeypatch.delenv(variable, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path
