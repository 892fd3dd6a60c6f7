"""
Pytest configuration and fixtures.
"""

import json

import pytest

from config import settings
from sphere_mergelyan.approx import PipelineControls, VerificationGrid
from sphere_mergelyan.conformal import RiemannMap
from sphere_mergelyan.jordan_domain import DomainSpec

CARDIOID = [0, 1, 0.25]


@pytest.fixture(autouse=True)
def quiet_file_logging(monkeypatch, tmp_path):
    """Keep harness runs from writing log files or results into the checkout."""
    monkeypatch.setattr(settings.logging, "file_enabled", False)
    monkeypatch.setattr(settings, "results_dir", str(tmp_path / "results"))


@pytest.fixture
def disc_spec():
    """The unit disc (identity Riemann map)."""
    return DomainSpec.unit_disc()


@pytest.fixture
def cardioid_spec():
    """psi(z) = z + z^2/4, injective on the closed disc."""
    return DomainSpec.polynomial_image(CARDIOID)


@pytest.fixture
def disc_map(disc_spec):
    return RiemannMap(disc_spec)


@pytest.fixture
def cardioid_map(cardioid_spec):
    return RiemannMap(cardioid_spec)


@pytest.fixture
def small_grid():
    """A verification grid small enough for fast tests (still two chunks)."""
    return VerificationGrid.build(boundary=1024, interior=512)


@pytest.fixture
def fast_controls():
    """Pipeline controls using the small verification grid."""
    return PipelineControls(verification_boundary=1024, verification_interior=512)


@pytest.fixture
def write_config(tmp_path):
    """Write an experiment dict (or raw text) to a JSON file and return its path."""

    def _write(content, name="experiment.json"):
        path = tmp_path / name
        if isinstance(content, str):
            path.write_text(content, encoding="utf-8")
        else:
            path.write_text(json.dumps(content), encoding="utf-8")
        return path

    return _write
