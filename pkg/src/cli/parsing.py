"""
Argument parsing helpers for the command-line front end.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

import orjson

from src.qsim.angles import Angle
from src.utils.exceptions import PreconditionError
from src.utils.jsonio import read_json

POLICIES = ("shared", "fresh")
CASES = ("cnot", "toffoli")
FORMATS = ("json", "csv")

DEFAULT_GRID = {
    "theta": ["pi/6", "1.0", "1.3"],
    "alpha": ["pi/3", "0.7", "2.0"],
    "eps": [0.2, 0.1, 0.05],
}


@dataclass(frozen=True)
class GridCell:
    """One (theta, alpha, eps) point of a bench grid, angles kept as typed."""
    theta: str
    alpha: str
    eps: float

    @property
    def sort_key(self):
        return (Angle.parse(self.theta).radians, Angle.parse(self.alpha).radians, self.eps)


def parse_angle(text: str, flag: str) -> Angle:
    """Parse a radians literal or a "p*pi/q" form, naming the flag on failure."""
    try:
        return Angle.parse(text)
    except PreconditionError as e:
        raise PreconditionError(f"{flag}: {e.message}", context={"flag": flag, "value": text})


def parse_eps(value: float) -> float:
    if not math.isfinite(value) or not 0.0 < value < 1.0:
        raise PreconditionError(f"--eps must lie in (0, 1), got {value}", context={"eps": value})
    return value


def parse_choice(value: str, choices: Sequence[str], flag: str) -> str:
    if value not in choices:
        raise PreconditionError(f"{flag} must be one of {', '.join(choices)}, got {value!r}")
    return value


def build_grid(thetas: Sequence, alphas: Sequence, epss: Sequence) -> List[GridCell]:
    """Cartesian product of the axes, sorted by (theta, alpha, eps)."""
    try:
        cells = [
            GridCell(str(t), str(a), float(e))
            for t, a, e in itertools.product(thetas, alphas, epss)
        ]
    except (TypeError, ValueError) as e:
        raise PreconditionError(f"Grid eps values must be numbers: {e}")
    for cell in cells:
        parse_angle(cell.theta, "theta")
        parse_angle(cell.alpha, "alpha")
        parse_eps(cell.eps)
    return sorted(cells, key=lambda c: c.sort_key)


def load_grid(path: Optional[Path]) -> List[GridCell]:
    """
    Read a bench grid.

    The file is a JSON object {"theta": [...], "alpha": [...], "eps": [...]};
    angles may be strings such as "pi/6". Without a file the default 3x3x3
    grid is used.

    Args:
        path: Grid file or None

    Returns:
        Sorted grid cells
    """
    try:
        axes = DEFAULT_GRID if path is None else read_json(path)
    except orjson.JSONDecodeError as e:
        raise PreconditionError(f"Grid file is not valid JSON: {e}", context={"path": str(path)})
    if not isinstance(axes, dict):
        raise PreconditionError("Grid file must hold a JSON object", context={"path": str(path)})
    missing = [axis for axis in ("theta", "alpha", "eps") if axis not in axes]
    if missing:
        raise PreconditionError(f"Grid file is missing axes: {missing}", context={"path": str(path)})
    cells = build_grid(axes["theta"], axes["alpha"], axes["eps"])
    if not cells:
        raise PreconditionError("The bench grid is empty", context={"path": str(path)})
    return cells
