"""
Unit tests for settings and tolerances.
"""

import sys
import os

import pytest
from pydantic import ValidationError

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', '..'))

from src.utils.config import TOLERANCES, GatesmithSettings, get_settings


class TestSettings:
    """Tests for GatesmithSettings."""

    def test_defaults(self):
        """Default caps and log level."""
        settings = get_settings()
        assert settings.max_qubits == 12
        assert settings.max_state_qubits == 24
        assert settings.log_level == "INFO"
        assert settings.bench_workers is None
        assert settings.density_max_words == 20000

    def test_environment_override(self, monkeypatch):
        """GATESMITH_ variables override the defaults."""
        monkeypatch.setenv("GATESMITH_MAX_QUBITS", "10")
        monkeypatch.setenv("GATESMITH_BENCH_WORKERS", "3")
        settings = GatesmithSettings()
        assert settings.max_qubits == 10
        assert settings.bench_workers == 3

    def test_cap_bounds(self, monkeypatch):
        """Caps outside their range are rejected."""
        monkeypatch.setenv("GATESMITH_MAX_QUBITS", "40")
        with pytest.raises(ValidationError):
            GatesmithSettings()

    def test_cached(self):
        """get_settings returns one instance until cleared."""
        assert get_settings() is get_settings()


class TestTolerances:
    """Tests for the fixed tolerances."""

    def test_values(self):
        """Tolerances are the documented constants."""
        assert TOLERANCES.angle == 1e-9
        assert TOLERANCES.orthogonality == 1e-10
        assert TOLERANCES.normalization == 1e-12
        assert TOLERANCES.spectrum_gap == 1e-6
