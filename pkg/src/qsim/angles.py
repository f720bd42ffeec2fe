"""
Angles in radians with canonicalization to [0, 2*pi).

An Angle optionally remembers an exact rational multiple of pi (when it was
parsed from a "p*pi/q" literal), so membership in the excluded sets
{multiples of pi/2} and {multiples of pi/4} can be decided exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from src.utils.config import TOLERANCES
from src.utils.exceptions import NonFiniteInputError, PreconditionError

TWO_PI = 2.0 * math.pi

# "pi", "-pi/4", "3*pi/8", "3pi/8", "pi*3/8", "2/3*pi"
_PI_FORMS = [
    re.compile(r"^(?P<sign>[+-]?)(?P<p>\d+)?\s*\*?\s*pi(?:\s*/\s*(?P<q>\d+))?$"),
    re.compile(r"^(?P<sign>[+-]?)pi\s*\*\s*(?P<p>\d+)(?:\s*/\s*(?P<q>\d+))?$"),
    re.compile(r"^(?P<sign>[+-]?)(?P<p>\d+)\s*/\s*(?P<q>\d+)\s*\*\s*pi$"),
]


def _canonical(radians: float) -> float:
    value = math.fmod(radians, TWO_PI)
    if value < 0.0:
        value += TWO_PI
    if value >= TWO_PI:
        value = 0.0
    return value


@dataclass(frozen=True)
class Angle:
    """
    A real angle, canonicalized to [0, 2*pi).

    Attributes:
        radians: Canonical value in [0, 2*pi)
        pi_multiple: Exact value / pi in [0, 2) when known
    """
    radians: float
    pi_multiple: Optional[Fraction] = field(default=None, compare=False)

    def __post_init__(self):
        if not math.isfinite(self.radians):
            raise NonFiniteInputError(f"Angle must be finite, got {self.radians}")
        object.__setattr__(self, "radians", _canonical(float(self.radians)))
        if self.pi_multiple is not None:
            object.__setattr__(self, "pi_multiple", Fraction(self.pi_multiple) % 2)

    @classmethod
    def from_pi_fraction(cls, numerator: int, denominator: int = 1) -> "Angle":
        """
        Build the angle numerator*pi/denominator exactly.

        Args:
            numerator: Integer numerator
            denominator: Positive integer denominator

        Returns:
            Angle with an exact pi multiple attached
        """
        if denominator == 0:
            raise PreconditionError("Angle denominator must be non-zero")
        frac = Fraction(numerator, denominator) % 2
        return cls(float(frac) * math.pi, pi_multiple=frac)

    @classmethod
    def parse(cls, text: Union[str, float, int, "Angle"]) -> "Angle":
        """
        Parse an angle from a radians literal or an exact "p*pi/q" form.

        Args:
            text: "0.5", "pi/3", "-pi/4", "3*pi/8", "2/3*pi" or a number

        Returns:
            Parsed Angle
        """
        if isinstance(text, Angle):
            return text
        if isinstance(text, (int, float)):
            return cls(float(text))
        cleaned = text.strip().lower().replace(" ", "").replace("π", "pi")
        for pattern in _PI_FORMS:
            match = pattern.match(cleaned)
            if match:
                p = int(match.group("p") or 1)
                q = int(match.group("q") or 1)
                if match.group("sign") == "-":
                    p = -p
                return cls.from_pi_fraction(p, q)
        try:
            return cls(float(cleaned))
        except ValueError:
            raise PreconditionError(f"Cannot parse angle: {text!r}", context={"text": text})

    @property
    def is_exact(self) -> bool:
        return self.pi_multiple is not None

    def is_multiple_of(self, step_over_pi: Fraction, tol: float = TOLERANCES.angle) -> bool:
        """
        Whether the angle is a multiple of step_over_pi * pi.

        Exact when the angle carries a rational pi multiple, otherwise decided
        within tol radians of the nearest lattice point.

        Args:
            step_over_pi: Lattice step divided by pi, e.g. Fraction(1, 2)
            tol: Classification tolerance in radians

        Returns:
            True if the angle is on the lattice
        """
        step_over_pi = Fraction(step_over_pi)
        if self.pi_multiple is not None:
            return (self.pi_multiple / step_over_pi).denominator == 1
        step = float(step_over_pi) * math.pi
        ratio = self.radians / step
        return abs(ratio - round(ratio)) * step <= tol

    def is_multiple_of_half_pi(self, tol: float = TOLERANCES.angle) -> bool:
        return self.is_multiple_of(Fraction(1, 2), tol)

    def is_multiple_of_quarter_pi(self, tol: float = TOLERANCES.angle) -> bool:
        return self.is_multiple_of(Fraction(1, 4), tol)

    def __neg__(self) -> "Angle":
        pm = -self.pi_multiple if self.pi_multiple is not None else None
        return Angle(-self.radians, pi_multiple=pm)

    def half(self) -> "Angle":
        """Half of the canonical value, in [0, pi)."""
        pm = self.pi_multiple / 2 if self.pi_multiple is not None else None
        return Angle(self.radians / 2.0, pi_multiple=pm)

    def __float__(self) -> float:
        return self.radians

    def __str__(self) -> str:
        if self.pi_multiple is not None:
            f = self.pi_multiple
            if f == 0:
                return "0"
            num = "pi" if f.numerator == 1 else f"{f.numerator}*pi"
            return num if f.denominator == 1 else f"{num}/{f.denominator}"
        return repr(self.radians)


AngleLike = Union[Angle, float, int, str]


def as_angle(value: AngleLike) -> Angle:
    """Coerce a float, string or Angle to an Angle."""
    return Angle.parse(value)
