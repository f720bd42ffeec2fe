"""
Unit tests for exact and heuristic irrationality witnesses.
"""

import sys
import os
import math

import numpy as np
import pytest
import sympy

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', '..'))

from src.completeness.constructions import build_theorem4_U
from src.completeness.exact import (
    check_theorem4_charpoly,
    exact_charpoly_witness,
    exact_cnot_analogue_U,
    exact_matrix,
    exact_theorem4_U,
)
from src.completeness.witness import continued_fraction, convergents, rational_witness
from src.utils.exceptions import ExactnessError, NonFiniteInputError, PreconditionError


class TestExactCharpoly:
    """Tests for the exact characteristic-polynomial analysis."""

    def test_exact_operator_entries(self):
        """Entries are integer multiples of 1/8 and the trace is 36/8."""
        u = exact_theorem4_U()
        assert all((entry * 8).is_integer for entry in u)
        assert u.trace() == sympy.Rational(36, 8)

    def test_witness(self):
        """(lambda - 1)^6 times lambda^2 + 3/2 lambda + 1."""
        witness = exact_charpoly_witness(exact_theorem4_U())
        assert witness.unit_root_multiplicity == 6
        assert witness.remainder_coefficients == ["1", "3/2", "1"]
        assert not witness.remainder_is_integral
        assert witness.remainder_is_irreducible
        assert witness.non_unit_trace == "-3/2"

    def test_check_exact(self):
        """The built-in exact construction passes."""
        assert check_theorem4_charpoly() is True

    def test_check_from_float_operator(self):
        """The float operator snapped to the 1/8 lattice also passes."""
        snapped = np.round(build_theorem4_U().entries * 8) / 8
        assert check_theorem4_charpoly(snapped)

    def test_non_exact_input_rejected(self):
        """Entries off the 1/8 lattice are rejected."""
        with pytest.raises(ExactnessError):
            exact_matrix(np.full((8, 8), 0.1), 8)

    def test_analogue_reports(self):
        """The CNOT analogue yields a witness without a claim."""
        witness = exact_charpoly_witness(exact_cnot_analogue_U())
        assert witness.dim == 4


class TestRationalWitness:
    """Tests for continued-fraction witnesses."""

    def test_exact_rational(self):
        """2/3 is found with a tiny residual."""
        witness = rational_witness(2 / 3, 1_000_000)
        assert witness.best_rational == (2, 3)
        assert witness.residual < 1e-15

    def test_denominator_cap(self):
        """0.5 with q_max 1 has no admissible rational."""
        witness = rational_witness(0.5, 1)
        assert witness.best_rational is None
        assert witness.convergent == (0, 1)

    def test_toffoli_angle_is_not_rational(self):
        """(pi - arccos(3/4)) / pi has no small-denominator match."""
        witness = rational_witness((math.pi - math.acos(0.75)) / math.pi)
        assert witness.best_rational is None
        assert witness.kind == "heuristic"

    def test_convergents(self):
        """3/4 expands to [0; 1, 3]; convergents of [0; 1, 2] end at 2/3."""
        assert continued_fraction(0.75) == [0, 1, 3]
        assert list(convergents([0, 1, 2])) == [(0, 1), (1, 1), (2, 3)]

    def test_invalid_inputs(self):
        """Non-finite values and q_max < 1 are rejected."""
        with pytest.raises(NonFiniteInputError):
            rational_witness(float("inf"))
        with pytest.raises(PreconditionError):
            rational_witness(0.3, 0)
