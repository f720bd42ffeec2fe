"""
The single-qubit basis gate S of {Toffoli, S}.

S is either the rotation U_theta or a reflection [[cos b, sin b], [sin b, -cos b]].
A reflection is normalized to the rotation sigma_x . S, so everything downstream
works with a rotation angle theta.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from src.qsim.angles import Angle, AngleLike, as_angle
from src.utils.config import TOLERANCES
from src.utils.exceptions import (
    AngleDegeneracyError,
    DimensionMismatchError,
    NonOrthogonalError,
    PreconditionError,
)

logger = logging.getLogger(__name__)


def _reflection_to_rotation(beta: Angle) -> Angle:
    # sigma_x . S_beta = U_{pi/2 - beta}
    pm = Fraction(1, 2) - beta.pi_multiple if beta.pi_multiple is not None else None
    return Angle(math.pi / 2.0 - beta.radians, pi_multiple=pm)


@dataclass(frozen=True)
class BasisSpec:
    """
    Normalized basis gate.

    Attributes:
        s_theta: Working rotation angle theta
        s_is_reflection: Whether the physical gate is a reflection
        reflection_beta: Angle of the physical reflection, when s_is_reflection
    """
    s_theta: Angle
    s_is_reflection: bool = False
    reflection_beta: Optional[Angle] = None

    def __post_init__(self):
        if self.s_is_reflection and self.reflection_beta is None:
            raise PreconditionError("A reflection basis needs its reflection angle")
        if self.s_theta.is_multiple_of_half_pi():
            raise AngleDegeneracyError(
                f"theta = {self.s_theta} is a multiple of pi/2; S is not basis-changing",
                angle=self.s_theta.radians,
                excluded_step="pi/2",
            )

    @classmethod
    def rotation(cls, theta: AngleLike) -> "BasisSpec":
        return cls(as_angle(theta))

    @classmethod
    def reflection(cls, beta: AngleLike) -> "BasisSpec":
        beta = as_angle(beta)
        return cls(_reflection_to_rotation(beta), s_is_reflection=True, reflection_beta=beta)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "BasisSpec":
        """
        Classify a 2x2 real orthogonal matrix as a rotation or a reflection.

        Args:
            matrix: The basis gate S

        Returns:
            BasisSpec with the working rotation angle
        """
        m = np.asarray(matrix, dtype=float)
        if m.shape != (2, 2):
            raise DimensionMismatchError(f"Basis gate must be 2x2, got {m.shape}")
        if np.max(np.abs(m.T @ m - np.eye(2))) > TOLERANCES.orthogonality:
            raise NonOrthogonalError("Basis gate is not orthogonal", context={"matrix": m.tolist()})
        angle = Angle(math.atan2(m[1, 0], m[0, 0]))
        if np.linalg.det(m) > 0:
            spec = cls(angle)
        else:
            spec = cls.reflection(angle)
        logger.debug(f"Basis gate classified as {'reflection' if spec.s_is_reflection else 'rotation'}, theta={spec.s_theta}")
        return spec

    @property
    def theta(self) -> float:
        return self.s_theta.radians

    @property
    def delta(self) -> float:
        """1 / log(1 / (cos^4 theta + sin^4 theta)), the phase-ancilla size constant."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        return 1.0 / math.log(1.0 / (c ** 4 + s ** 4))

    @property
    def delta_prime(self) -> float:
        """1 / log(1 / cos^2 theta), the Grover-register size constant."""
        return 1.0 / math.log(1.0 / math.cos(self.theta) ** 2)

    def __str__(self) -> str:
        if self.s_is_reflection:
            return f"reflection(beta={self.reflection_beta}) ~ rotation(theta={self.s_theta})"
        return f"rotation(theta={self.s_theta})"
