"""
Stabilizer-escape checks.

An operator V "preserves" a unit vector xi when V xi lies in span{xi}, i.e.
|<xi, V xi>| = 1, and "escapes" span{xi} when 1 - |<xi, V xi>| is bounded
away from zero. The density argument chains such operators: each one fixes
the vectors already handled and moves the next one.
"""

from __future__ import annotations

import itertools
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from src.completeness.constructions import build_theorem3_U, build_theorem4_U, theorem4_conjugates
from src.qsim.angles import AngleLike, as_angle
from src.qsim.circuit import Circuit
from src.qsim.gates import CNOT_GATE
from src.qsim.operators import RealOperator, circuit_unitary
from src.qsim.spectrum import rotation_spectrum
from src.utils.config import TOLERANCES
from src.utils.exceptions import AngleDegeneracyError, EigenDegeneracyError, PreconditionError

logger = logging.getLogger(__name__)

_S2 = 1.0 / math.sqrt(2.0)
_S3 = 1.0 / math.sqrt(3.0)

# xi_1 of the CNOT/S argument
XI1_THEOREM3 = 0.5 * np.array([1.0, -1.0, 1.0, 1.0])

# The listed +1 eigenvectors of the Toffoli/H operator, normalized:
# |000>, |010>, |100>, |001>+|011>, |101>+|110>+|111>, |011>-|101>
XI_THEOREM4: Dict[str, np.ndarray] = {}
for _label, _entries in (
    ("xi1", {0b000: 1.0}),
    ("xi2", {0b010: 1.0}),
    ("xi3", {0b100: 1.0}),
    ("xi4", {0b001: _S2, 0b011: _S2}),
    ("xi5", {0b101: _S3, 0b110: _S3, 0b111: _S3}),
    ("xi6", {0b011: _S2, 0b101: -_S2}),
):
    _vec = np.zeros(8)
    for _index, _value in _entries.items():
        _vec[_index] = _value
    XI_THEOREM4[_label] = _vec


class EscapeCheck(BaseModel):
    """One preserve/escape check of an operator against a vector chain."""

    operator_id: str
    preserved: List[str]
    escaped_from: str
    preservation_residuals: List[float]
    escape_margin: float
    asserted: bool = True

    @property
    def preserves_all(self) -> bool:
        return all(r <= TOLERANCES.preserve for r in self.preservation_residuals)

    @property
    def escapes(self) -> bool:
        return self.escape_margin > TOLERANCES.escape_margin

    @property
    def passed(self) -> bool:
        return self.preserves_all and self.escapes


def overlap(op: RealOperator, xi: np.ndarray) -> float:
    """|<xi, V xi>|."""
    return abs(float(xi @ (op.entries @ xi)))


def escape_check(
    operator_id: str,
    op: RealOperator,
    preserved: Sequence[Tuple[str, np.ndarray]],
    escaped: Tuple[str, np.ndarray],
    asserted: bool = True,
) -> EscapeCheck:
    """
    Check that op preserves every listed vector and escapes the span of another.

    Args:
        operator_id: Label for the report
        op: Operator V
        preserved: (label, unit vector) pairs expected to be preserved
        escaped: (label, unit vector) expected to be moved out of its span
        asserted: Whether a failure should fail the suite

    Returns:
        EscapeCheck with residuals 1 - |<xi, V xi>| and the escape margin
    """
    residuals = [1.0 - overlap(op, xi) for _, xi in preserved]
    margin = 1.0 - overlap(op, escaped[1])
    check = EscapeCheck(
        operator_id=operator_id,
        preserved=[label for label, _ in preserved],
        escaped_from=escaped[0],
        preservation_residuals=[max(r, 0.0) for r in residuals],
        escape_margin=margin,
        asserted=asserted,
    )
    logger.debug(f"{operator_id}: residuals={check.preservation_residuals} margin={margin:.4f}")
    return check


def theorem3_xi2(theta: AngleLike) -> np.ndarray:
    """
    The +1 eigenvector of the CNOT/S operator orthogonal to xi_1.

    Raises:
        EigenDegeneracyError: if the +1 eigenspace is not two-dimensional
    """
    spectrum = rotation_spectrum(build_theorem3_U(theta))
    if spectrum.plus_one_multiplicity != 2:
        raise EigenDegeneracyError(
            f"Expected a 2-dimensional +1 eigenspace, got {spectrum.plus_one_multiplicity}",
            context={"theta": float(as_angle(theta)), "plus_one": spectrum.plus_one_multiplicity},
        )
    basis = spectrum.plus_one_basis
    # Remove the xi_1 component; what remains spans the second direction
    coeffs = basis.T @ XI1_THEOREM3
    if abs(np.linalg.norm(coeffs) - 1.0) > 1e-8:
        raise EigenDegeneracyError("xi_1 is not in the +1 eigenspace", context={"overlap": float(np.linalg.norm(coeffs))})
    orth = np.array([-coeffs[1], coeffs[0]])
    xi2 = basis @ orth
    xi2 /= np.linalg.norm(xi2)
    # Fix the sign so the largest-magnitude entry is positive
    if xi2[np.argmax(np.abs(xi2))] < 0:
        xi2 = -xi2
    return xi2


def theorem3_escape_suite(theta: AngleLike) -> List[EscapeCheck]:
    """
    Escape checks for {U, CNOT[0,1], CNOT[1,0]}.

    - CNOT[0,1] preserves xi_1 and escapes span{xi_2}
    - CNOT[1,0] escapes span{xi_1}
    """
    angle = as_angle(theta)
    if angle.is_multiple_of_quarter_pi():
        raise AngleDegeneracyError(
            f"theta = {angle} is a multiple of pi/4; the squared basis gate is not basis-changing",
            angle=angle.radians,
            excluded_step="pi/4",
        )
    xi1 = ("xi1", XI1_THEOREM3)
    xi2 = ("xi2", theorem3_xi2(angle))
    cnot01 = circuit_unitary(Circuit.from_ops(2, [(CNOT_GATE, (0, 1))]))
    cnot10 = circuit_unitary(Circuit.from_ops(2, [(CNOT_GATE, (1, 0))]))
    return [
        escape_check("CNOT[0,1]", cnot01, [xi1], xi2),
        escape_check("CNOT[1,0]", cnot10, [], xi1),
    ]


def theorem4_xi_chain() -> List[Tuple[str, np.ndarray]]:
    return list(XI_THEOREM4.items())


def listed_eigenvector_residuals() -> Dict[str, float]:
    """||U xi - xi|| for each listed +1 eigenvector of the Toffoli/H operator."""
    u = build_theorem4_U().entries
    return {label: float(np.linalg.norm(u @ xi - xi)) for label, xi in XI_THEOREM4.items()}


def theorem4_escape_suite() -> List[EscapeCheck]:
    """
    Check each U_i against the chain: preserve xi_j for j < i, escape span{xi_i}.

    Outcomes are reported, not asserted; U_2 and U_5 coincide as written.
    """
    chain = theorem4_xi_chain()
    checks = []
    for i, (label, op) in enumerate(theorem4_conjugates().items()):
        checks.append(escape_check(label, op, chain[:i], chain[i], asserted=False))
    return checks


def search_escape_chain() -> Optional[List[str]]:
    """
    Search orderings of U_1..U_6 for one that satisfies the whole chain.

    Returns:
        Operator labels in chain order, or None if no ordering works
    """
    chain = theorem4_xi_chain()
    ops = theorem4_conjugates()
    for ordering in itertools.permutations(ops):
        if all(
            escape_check(label, ops[label], chain[:i], chain[i]).passed
            for i, label in enumerate(ordering)
        ):
            logger.info(f"Escape chain found: {list(ordering)}")
            return list(ordering)
    logger.info("No ordering of U_1..U_6 satisfies the escape chain")
    return None


def stabilizer_escape_suite(case: str, theta: Optional[AngleLike] = None) -> List[EscapeCheck]:
    """
    Run the escape checks for "theorem3" (needs theta) or "theorem4".

    Args:
        case: "theorem3" or "theorem4"
        theta: Basis angle for theorem3

    Returns:
        List of EscapeCheck
    """
    if case == "theorem3":
        if theta is None:
            raise PreconditionError("theorem3 escape suite needs theta")
        return theorem3_escape_suite(theta)
    if case == "theorem4":
        return theorem4_escape_suite()
    raise PreconditionError(f"Unknown escape suite case {case!r}", context={"case": case})
