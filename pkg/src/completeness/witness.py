"""
Heuristic irrationality witnesses via continued fractions.

A witness is evidence, not proof: it reports the best convergent p/q of x
with q <= q_max and whether x is that rational to within 1e-12.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field

from src.utils.exceptions import NonFiniteInputError, PreconditionError

# x is declared rational when |x - p/q| is below this
RATIONAL_RESIDUAL = 1e-12


class IrrationalityWitness(BaseModel):
    """Best bounded-denominator convergent of a real number."""

    value_over_pi: float
    best_rational: Optional[Tuple[int, int]] = None
    residual: float
    q_max: int = Field(ge=1)
    convergent: Tuple[int, int]  # best convergent with q <= q_max, rational or not
    kind: str = "heuristic"


def continued_fraction(x: float, max_terms: int = 64) -> List[int]:
    """Partial quotients of the exact binary value of x."""
    value = Fraction(x)
    terms: List[int] = []
    while len(terms) < max_terms:
        a = math.floor(value)
        terms.append(a)
        frac = value - a
        if frac == 0:
            break
        value = 1 / frac
    return terms


def convergents(terms: List[int]) -> Iterator[Tuple[int, int]]:
    """Successive convergents p_n/q_n of a continued fraction."""
    p_prev, p = 1, terms[0]
    q_prev, q = 0, 1
    yield p, q
    for a in terms[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q


def rational_witness(x: float, q_max: int = 1_000_000) -> IrrationalityWitness:
    """
    Look for a rational p/q with q <= q_max matching x.

    Args:
        x: Value to test, typically angle / pi
        q_max: Largest admissible denominator

    Returns:
        IrrationalityWitness; best_rational is set iff the residual is below 1e-12
    """
    if not math.isfinite(x):
        raise NonFiniteInputError(f"rational_witness needs a finite value, got {x}")
    if q_max < 1:
        raise PreconditionError(f"q_max must be >= 1, got {q_max}")

    best = None
    for p, q in convergents(continued_fraction(x)):
        if q > q_max:
            break
        best = (p, q)
    p, q = best
    residual = abs(x - p / q)
    return IrrationalityWitness(
        value_over_pi=x,
        best_rational=(p, q) if residual < RATIONAL_RESIDUAL else None,
        residual=residual,
        q_max=q_max,
        convergent=(p, q),
    )
