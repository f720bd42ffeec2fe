"""
Exact characteristic-polynomial witnesses.

The 8x8 operator (H (x) H (x) H . Toffoli)^2 has entries that are integer
multiples of 1/8, so its characteristic polynomial can be computed over Q
with no rounding. After dividing out every (lambda - 1) factor, the remaining
factor lambda^2 + (3/2) lambda + 1 has a non-integer coefficient, so its
roots are not algebraic integers, hence not roots of unity, hence the
rotation angle is not a rational multiple of pi.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Optional, Union

import numpy as np
import sympy
from pydantic import BaseModel

from src.utils.exceptions import ExactnessError

logger = logging.getLogger(__name__)

LAMBDA = sympy.Symbol("lambda")

MatrixLike = Union[sympy.Matrix, np.ndarray]


class CharpolyWitness(BaseModel):
    """Outcome of the exact characteristic-polynomial analysis."""

    dim: int
    trace: str
    unit_root_multiplicity: int
    remainder_coefficients: List[str]  # highest degree first, monic
    remainder_is_integral: bool
    remainder_is_irreducible: bool
    non_unit_trace: str  # trace - unit_root_multiplicity: sum of the other eigenvalues


def _hadamard() -> sympy.Matrix:
    return sympy.Matrix([[1, 1], [1, -1]]) / sympy.sqrt(2)


def _toffoli() -> sympy.Matrix:
    m = sympy.eye(8)
    m[6, 6] = m[7, 7] = 0
    m[6, 7] = m[7, 6] = 1
    return m


def _cnot() -> sympy.Matrix:
    m = sympy.eye(4)
    m[2, 2] = m[3, 3] = 0
    m[2, 3] = m[3, 2] = 1
    return m


def _rationalize(matrix: sympy.Matrix) -> sympy.Matrix:
    out = matrix.applyfunc(sympy.expand)
    for entry in out:
        if not entry.is_Rational:
            raise ExactnessError(
                f"Exact construction produced a non-rational entry: {entry}",
                context={"entry": str(entry)},
            )
    return out


def exact_theorem4_U() -> sympy.Matrix:
    """(H (x) H (x) H . Toffoli)^2 over Q; the Toffoli acts first."""
    h = _hadamard()
    h3 = sympy.Matrix(sympy.kronecker_product(h, h, h))
    once = h3 * _toffoli()
    return _rationalize(once * once)


def exact_cnot_analogue_U() -> sympy.Matrix:
    """(H (x) H . CNOT)^2 over Q."""
    h = _hadamard()
    once = sympy.Matrix(sympy.kronecker_product(h, h)) * _cnot()
    return _rationalize(once * once)


def exact_matrix(matrix: MatrixLike, denominator: int) -> sympy.Matrix:
    """
    Convert a matrix to an exact rational one whose entries are multiples of 1/denominator.

    Float entries are converted through their exact binary value; any entry
    that is not exactly an integer multiple of 1/denominator is rejected.

    Args:
        matrix: numpy or sympy matrix
        denominator: Required common denominator

    Returns:
        sympy Matrix of Rationals
    """
    if isinstance(matrix, sympy.MatrixBase):
        exact = _rationalize(sympy.Matrix(matrix))
    else:
        values = np.asarray(matrix, dtype=float)
        rows = []
        for row in values:
            converted = []
            for x in row:
                if not np.isfinite(x):
                    raise ExactnessError(f"Non-finite entry {x}")
                frac = Fraction(float(x))
                converted.append(sympy.Rational(frac.numerator, frac.denominator))
            rows.append(converted)
        exact = sympy.Matrix(rows)
    for entry in exact:
        if not (entry * denominator).is_integer:
            raise ExactnessError(
                f"Entry {entry} is not an integer multiple of 1/{denominator}",
                context={"entry": str(entry), "denominator": denominator},
            )
    return exact


def exact_charpoly_witness(matrix: sympy.Matrix) -> CharpolyWitness:
    """
    Split the characteristic polynomial into (lambda - 1)^m times a remainder.

    Args:
        matrix: Exact rational square matrix

    Returns:
        CharpolyWitness with the remainder's integrality and irreducibility
    """
    poly = sympy.Poly(matrix.charpoly(LAMBDA).as_expr(), LAMBDA, domain=sympy.QQ)
    unit = sympy.Poly(LAMBDA - 1, LAMBDA, domain=sympy.QQ)
    multiplicity = 0
    while poly.degree() > 0 and poly.eval(1) == 0:
        poly = poly.exquo(unit)
        multiplicity += 1
    remainder = poly.monic()
    coeffs = remainder.all_coeffs()
    integral = all(sympy.Rational(c).q == 1 for c in coeffs)
    irreducible = remainder.degree() <= 1 or remainder.is_irreducible
    trace = sympy.Rational(matrix.trace())
    witness = CharpolyWitness(
        dim=matrix.shape[0],
        trace=str(trace),
        unit_root_multiplicity=multiplicity,
        remainder_coefficients=[str(c) for c in coeffs],
        remainder_is_integral=integral,
        remainder_is_irreducible=bool(irreducible),
        non_unit_trace=str(trace - multiplicity),
    )
    logger.debug(f"charpoly witness: {witness}")
    return witness


def check_theorem4_charpoly(operator: Optional[MatrixLike] = None) -> bool:
    """
    Certify exactly that the non-unit eigenvalues of the Toffoli/H operator
    are not roots of unity.

    Args:
        operator: Optional matrix to check instead of the exact construction;
            entries must be exact multiples of 1/8

    Returns:
        True iff the trace is 36/8, trace - 6 = -3/2, and the remaining
        factor is lambda^2 + (3/2) lambda + 1, which is not integral
    """
    matrix = exact_theorem4_U() if operator is None else exact_matrix(operator, 8)
    if matrix.shape != (8, 8):
        raise ExactnessError(f"Expected an 8x8 operator, got {matrix.shape}")
    exact_matrix(matrix, 8)
    witness = exact_charpoly_witness(matrix)
    expected = [sympy.Integer(1), sympy.Rational(3, 2), sympy.Integer(1)]
    remainder = [sympy.Rational(c) for c in witness.remainder_coefficients]
    verdict = (
        sympy.Rational(witness.trace) == sympy.Rational(36, 8)
        and witness.unit_root_multiplicity == 6
        and sympy.Rational(witness.non_unit_trace) == sympy.Rational(-3, 2)
        and remainder == expected
        and not witness.remainder_is_integral
    )
    logger.info(f"Toffoli/H charpoly check: {verdict} (remainder {witness.remainder_coefficients})")
    return verdict
