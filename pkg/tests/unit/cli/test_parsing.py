"""
Unit tests for command-line argument parsing.
"""

import sys
import os
import math

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', '..'))

from src.cli.parsing import (
    DEFAULT_GRID,
    POLICIES,
    build_grid,
    load_grid,
    parse_angle,
    parse_choice,
    parse_eps,
)
from src.utils.exceptions import PreconditionError
from src.utils.jsonio import write_json


class TestParseAngle:
    """Tests for parse_angle."""

    def test_pi_form(self):
        """p*pi/q forms parse exactly."""
        angle = parse_angle("pi/6", "--theta")
        assert angle.radians == pytest.approx(math.pi / 6)
        assert angle.is_exact

    def test_radians(self):
        """Plain numbers are radians."""
        assert parse_angle("1.0", "--theta").radians == 1.0

    def test_names_flag(self):
        """Failures name the offending flag."""
        with pytest.raises(PreconditionError, match="--alpha"):
            parse_angle("half a turn", "--alpha")


class TestParseScalars:
    """Tests for parse_eps and parse_choice."""

    @pytest.mark.parametrize("value", [0.0, 1.0, -0.1, float("nan"), float("inf")])
    def test_bad_eps(self, value):
        """eps must lie strictly inside (0, 1)."""
        with pytest.raises(PreconditionError):
            parse_eps(value)

    def test_good_eps(self):
        """A valid eps passes through."""
        assert parse_eps(0.05) == 0.05

    def test_choice(self):
        """Only listed values are accepted."""
        assert parse_choice("fresh", POLICIES, "--policy") == "fresh"
        with pytest.raises(PreconditionError, match="--policy"):
            parse_choice("pooled", POLICIES, "--policy")


class TestGrid:
    """Tests for bench grids."""

    def test_default_grid(self):
        """Without a file the 3x3x3 grid is used, sorted by theta, alpha, eps values."""
        cells = load_grid(None)
        assert len(cells) == 27
        assert cells[0].theta == "pi/6"
        assert cells[0].alpha == "0.7"
        assert [c.eps for c in cells[:3]] == [0.05, 0.1, 0.2]
        assert {c.theta for c in cells} == set(DEFAULT_GRID["theta"])

    def test_sorted_by_value(self):
        """Cells sort by angle value, not by text."""
        cells = build_grid(["1.3", "pi/6"], ["2.0", "pi/3"], [0.1])
        assert [(c.theta, c.alpha) for c in cells] == [
            ("pi/6", "pi/3"), ("pi/6", "2.0"), ("1.3", "pi/3"), ("1.3", "2.0"),
        ]

    def test_file(self, tmp_path):
        """A grid file is read from JSON."""
        path = tmp_path / "grid.json"
        write_json(path, {"theta": ["1.0"], "alpha": ["pi/3", 0.7], "eps": [0.2]})
        cells = load_grid(path)
        assert [(c.theta, c.alpha, c.eps) for c in cells] == [("1.0", "0.7", 0.2), ("1.0", "pi/3", 0.2)]

    def test_empty(self, tmp_path):
        """An empty axis gives an empty grid, which is refused."""
        path = tmp_path / "grid.json"
        write_json(path, {"theta": [], "alpha": ["pi/3"], "eps": [0.2]})
        with pytest.raises(PreconditionError, match="empty"):
            load_grid(path)

    def test_missing_axis(self, tmp_path):
        """Every axis must be present."""
        path = tmp_path / "grid.json"
        write_json(path, {"theta": ["1.0"], "alpha": ["pi/3"]})
        with pytest.raises(PreconditionError, match="eps"):
            load_grid(path)

    def test_not_an_object(self, tmp_path):
        """The file must hold a JSON object."""
        path = tmp_path / "grid.json"
        write_json(path, [1, 2, 3])
        with pytest.raises(PreconditionError):
            load_grid(path)

    def test_malformed_json(self, tmp_path):
        """Unparseable files are precondition failures."""
        path = tmp_path / "grid.json"
        path.write_text("{theta: ")
        with pytest.raises(PreconditionError):
            load_grid(path)

    def test_bad_values(self):
        """Bad angles and eps values are refused."""
        with pytest.raises(PreconditionError):
            build_grid(["one"], ["pi/3"], [0.1])
        with pytest.raises(PreconditionError):
            build_grid(["1.0"], ["pi/3"], ["small"])
        with pytest.raises(PreconditionError):
            build_grid(["1.0"], ["pi/3"], [2.0])
