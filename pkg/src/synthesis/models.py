"""
Pydantic models for synthesis output.
"""

from typing import Dict, Literal, Optional

from pydantic import BaseModel, Field

from src.synthesis.params import SynthesisParams


class SynthesisReport(BaseModel):
    """
    Outcome of one synthesis run.

    achieved_error is the measured restricted error when verified, else None,
    with verification_method naming the simulation that produced it;
    bound_error is the analytic bound 4 gamma + the sigma_z term of the policy.
    """

    alpha: float
    theta: float
    eps: float
    basis: Literal["rotation", "reflection"] = "rotation"
    achieved_error: Optional[float] = None
    bound_error: float
    accumulation_bound: float
    verified: bool = False
    verification_method: Optional[Literal["dense", "plane"]] = None
    verification_note: Optional[str] = None
    gate_counts: Dict[str, int] = Field(default_factory=dict)
    size: int = 0
    n_qubits: int = 0
    ancilla_count: int = 0
    ancilla_bits: Optional[str] = None
    circuit_materialized: bool = True
    params: SynthesisParams

    @property
    def meets_target(self) -> bool:
        """Verified and within eps, or unverified with the bound reported."""
        if self.verified:
            return self.achieved_error is not None and self.achieved_error <= self.eps
        return True
