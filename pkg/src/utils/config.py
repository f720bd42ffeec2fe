"""
Runtime configuration for gatesmith.

Settings are read from environment variables prefixed with GATESMITH_ (and an
optional .env file). Numerical tolerances are fixed constants and live in
Tolerances rather than in the environment.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across the package."""
    angle: float = 1e-9  # angle classification (tau_angle)
    orthogonality: float = 1e-10  # O^T O = I entrywise
    normalization: float = 1e-12  # state norm after a gate
    input_norm: float = 1e-9  # accepted norm drift of a caller-supplied state
    spectrum_gap: float = 1e-6  # eigenvalue separation / angle ties
    preserve: float = 1e-10  # |<xi, U xi>| = 1 for a preserved vector
    escape_margin: float = 1e-3  # minimum 1 - |<xi, U xi>| for an escape


TOLERANCES = Tolerances()


class GatesmithSettings(BaseSettings):
    """Environment-driven settings."""

    model_config = SettingsConfigDict(
        env_prefix="GATESMITH_",
        env_file=".env",
        extra="ignore",
    )

    # Dense operator cap (circuit_unitary and synthesis verification)
    max_qubits: int = Field(default=12, ge=1, le=16)

    # Statevector cap for restricted_error
    max_state_qubits: int = Field(default=24, ge=1, le=30)

    log_level: str = "INFO"

    # Worker processes for bench; None lets the executor decide
    bench_workers: Optional[int] = Field(default=None, ge=1)

    # Word budget for density_probe BFS
    density_max_words: int = Field(default=20000, ge=1)


@lru_cache(maxsize=1)
def get_settings() -> GatesmithSettings:
    """
    Return the process-wide settings instance.

    Returns:
        Cached GatesmithSettings
    """
    return GatesmithSettings()
