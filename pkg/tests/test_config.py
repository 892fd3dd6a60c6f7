"""
Tests for settings, the parallel helpers and the report models.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from config import LoggingSettings, Settings
from sphere_mergelyan.models import ConvergenceRow, ConvergenceTable, StageErrors
from sphere_mergelyan.parallel import chunked_map, chunked_max


class TestSettings:
    """Tests for environment-driven settings."""

    def test_defaults(self, monkeypatch):
        """Numerical defaults match the documented values."""
        monkeypatch.delenv("SPHERE_MERGELYAN_JOBS", raising=False)
        s = Settings()
        assert s.jobs == 1
        assert s.inverse.tol == 1e-13
        assert s.inverse.grid == 64
        assert s.verification.boundary == 4096
        assert s.verification.interior == 2048
        assert s.quadrature.max_nodes == 2**20

    def test_environment_override(self, monkeypatch):
        """SPHERE_MERGELYAN_* variables override defaults."""
        monkeypatch.setenv("SPHERE_MERGELYAN_JOBS", "4")
        monkeypatch.setenv("SPHERE_MERGELYAN_INVERSE_TOL", "1e-12")
        s = Settings()
        assert s.jobs == 4
        assert s.inverse.tol == 1e-12

    def test_invalid_log_level(self):
        """Unknown log levels are rejected."""
        with pytest.raises(ValidationError):
            LoggingSettings(level="LOUD")


class TestParallel:
    """Tests for chunked evaluation."""

    def test_chunk_order_preserved(self):
        """Threaded results come back in input order."""
        values = np.arange(10_000, dtype=float)
        out = chunked_map(np.sqrt, values, jobs=4, chunk_size=333)
        np.testing.assert_array_equal(out, np.sqrt(values))

    def test_max(self):
        """chunked_max is the max over every chunk."""
        values = np.linspace(-1, 1, 5000)
        assert chunked_max(np.abs, values, jobs=3, chunk_size=100) == 1.0


class TestModels:
    """Tests for report models."""

    def test_triangle_slack(self):
        """Slack is nonpositive when the total respects the stage sum."""
        assert StageErrors(disc_stage=0.1, mergelyan_stage=0.2, total=0.25).triangle_slack < 0

    def test_csv_blank_seconds(self, tmp_path):
        """Missing wall times are written as empty fields."""
        table = ConvergenceTable(
            metric="chi",
            rows=[ConvergenceRow(degree=4, disc_stage=0.5, mergelyan_stage=0.25, total=0.125)],
        )
        path = tmp_path / "table.csv"
        table.to_csv(path)
        assert path.read_text() == "degree,disc_stage,mergelyan_stage,total,seconds\n4,0.5,0.25,0.125,\n"

    def test_negative_total_rejected(self):
        """Totals are distances and cannot be negative."""
        with pytest.raises(ValidationError):
            ConvergenceRow(degree=1, total=-1.0)
