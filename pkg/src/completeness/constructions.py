"""
Operators behind the completeness arguments for {CNOT, S} and {Toffoli, H}.

Qubit numbering is 0-based here: the 1-based Toffoli Lambda^2[a, b, c]
(controls a, b; target c) becomes Toffoli on qubits (a-1, b-1, c-1).
"""

from __future__ import annotations

from typing import Dict, List

from src.qsim.angles import AngleLike, as_angle
from src.qsim.circuit import Circuit
from src.qsim.gates import CNOT_GATE, H_GATE, TOFFOLI_GATE, STheta
from src.qsim.operators import RealOperator, circuit_unitary


def theorem3_circuit(theta: AngleLike) -> Circuit:
    """(U_theta (x) U_theta . CNOT[0, 1])^2 as a circuit; CNOT acts first."""
    s = STheta(as_angle(theta))
    once = Circuit.from_ops(2, [(CNOT_GATE, (0, 1)), (s, (0,)), (s, (1,))])
    return once.repeated(2)


def build_theorem3_U(theta: AngleLike) -> RealOperator:
    """
    The 4x4 operator (U_theta (x) U_theta . CNOT[1,2])^2.

    Args:
        theta: Basis rotation angle (no precondition)

    Returns:
        RealOperator on 2 qubits
    """
    return circuit_unitary(theorem3_circuit(theta))


def theorem4_circuit() -> Circuit:
    """(H (x) H (x) H . Toffoli[0,1,2])^2; the Toffoli acts first."""
    once = Circuit.from_ops(
        3, [(TOFFOLI_GATE, (0, 1, 2)), (H_GATE, (0,)), (H_GATE, (1,)), (H_GATE, (2,))]
    )
    return once.repeated(2)


def build_theorem4_U() -> RealOperator:
    """The 8x8 operator (H (x) H (x) H . Toffoli)^2."""
    return circuit_unitary(theorem4_circuit())


def cnot_analogue_circuit() -> Circuit:
    """(H (x) H . CNOT)^2, the 4x4 analogue with CNOT in place of Toffoli."""
    once = Circuit.from_ops(2, [(CNOT_GATE, (0, 1)), (H_GATE, (0,)), (H_GATE, (1,))])
    return once.repeated(2)


def theorem4_conjugates() -> Dict[str, RealOperator]:
    """
    U_1..U_6 exactly as written, with 0-based qubits.

    U_1 = I (x) I (x) H, U_2 = U_1 T[2,3,1] U_1, U_3 = U_1 T[1,3,2] U_1,
    U_4 = T[2,3,1], U_5 = U_1 T[2,3,1] U_1, U_6 = T[1,3,2],
    where T[a,b,c] is the Toffoli with controls a, b and target c.
    U_2 and U_5 coincide as written.
    """
    h_last = Circuit.from_ops(3, [(H_GATE, (2,))])
    toffoli_231 = Circuit.from_ops(3, [(TOFFOLI_GATE, (1, 2, 0))])
    toffoli_132 = Circuit.from_ops(3, [(TOFFOLI_GATE, (0, 2, 1))])
    circuits = {
        "U1": h_last,
        "U2": h_last + toffoli_231 + h_last,
        "U3": h_last + toffoli_132 + h_last,
        "U4": toffoli_231,
        "U5": h_last + toffoli_231 + h_last,
        "U6": toffoli_132,
    }
    return {label: circuit_unitary(c) for label, c in circuits.items()}


def theorem3_generators(theta: AngleLike) -> List[RealOperator]:
    """Generators {U, CNOT[0,1], CNOT[1,0]} of the two-qubit argument."""
    return [
        build_theorem3_U(theta),
        circuit_unitary(Circuit.from_ops(2, [(CNOT_GATE, (0, 1))])),
        circuit_unitary(Circuit.from_ops(2, [(CNOT_GATE, (1, 0))])),
    ]


def theorem4_generators() -> List[RealOperator]:
    """Generators {U, U_1..U_6} of the three-qubit argument."""
    return [build_theorem4_U(), *theorem4_conjugates().values()]
