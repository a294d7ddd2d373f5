"""Shared fixtures of the test suite."""

import json

import numpy as np
import pytest

from models.probe import FrequencyGrid, ProbeConfig


@pytest.fixture
def rng():
    """Reproducible generator for randomised property checks."""
    return np.random.default_rng(20250101)


@pytest.fixture
def unit_probe():
    """Probe with V = v = 1 on a grid around omega_0 = 0."""
    return ProbeConfig(omega_0=0.0, coupling=1.0, velocity=1.0, grid=FrequencyGrid.linspace(-5.0, 5.0, 201))


@pytest.fixture
def write_config(tmp_path):
    """Write a run configuration to a JSON file and return its path."""

    def _write(data, name="run.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write
