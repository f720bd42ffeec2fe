"""
Approximate synthesis of single-qubit rotations over {Toffoli, S}.
"""

from src.synthesis.basis import BasisSpec
from src.synthesis.lowering import LoweredCircuit, SigmaZSpec, lower_to_basis
from src.synthesis.models import SynthesisReport
from src.synthesis.params import SynthesisConfig, SynthesisParams, select_params
from src.synthesis.pipeline import synthesize

__all__ = [
    "BasisSpec",
    "LoweredCircuit",
    "SigmaZSpec",
    "lower_to_basis",
    "SynthesisReport",
    "SynthesisConfig",
    "SynthesisParams",
    "select_params",
    "synthesize",
]
