"""
Real-amplitude circuit IR and dense simulation.
"""

from src.qsim.angles import Angle, as_angle
from src.qsim.circuit import Circuit, ControlledBlock, GateApp
from src.qsim.operators import RealOperator, circuit_unitary, restricted_error
from src.qsim.spectrum import EigenSummary, RotationBlock, rotation_spectrum
from src.qsim.statevector import StateVector, apply_gate, basis_state, product_state, simulate

__all__ = [
    "Angle",
    "as_angle",
    "Circuit",
    "ControlledBlock",
    "GateApp",
    "RealOperator",
    "circuit_unitary",
    "restricted_error",
    "EigenSummary",
    "RotationBlock",
    "rotation_spectrum",
    "StateVector",
    "apply_gate",
    "basis_state",
    "product_state",
    "simulate",
]
