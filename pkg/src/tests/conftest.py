"""Configuration for the tests."""

import json
import os

import pytest

from src.config import DEFAULT_DESIGN_FREQUENCY, SCHEMA_DIR
from src.design.service import synthesize_geometry
from src.spectrum.schemas import FrequencyGrid, WaveTemplate


@pytest.fixture(autouse=True)
def default_threads(monkeypatch):
    """Sweeps run on the default worker count unless a test overrides it."""
    monkeypatch.delenv("MSF_THREADS", raising=False)


@pytest.fixture(scope="session")
def default_stackup():
    """Reference absorber synthesized at 2.5 THz."""
    return synthesize_geometry(DEFAULT_DESIGN_FREQUENCY)


@pytest.fixture(scope="session")
def default_grid():
    """601 points over 1 - 4 THz."""
    return FrequencyGrid(f_start=1e12, f_stop=4e12, n_points=601)


@pytest.fixture(scope="session")
def coarse_grid():
    """Cheaper grid for sweeps repeated many times."""
    return FrequencyGrid(f_start=1e12, f_stop=4e12, n_points=121)


@pytest.fixture(scope="session")
def normal_incidence():
    """TE wave at normal incidence."""
    return WaveTemplate()


@pytest.fixture(scope="session")
def load_schema():
    """Loader for the shipped JSON schema files."""

    def _load(name: str) -> dict:
        with open(
            os.path.join(SCHEMA_DIR, f"{name}.schema.json"), encoding="utf-8"
        ) as stream:
            return json.load(stream)

    return _load
