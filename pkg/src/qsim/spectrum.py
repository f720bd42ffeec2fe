"""
Rotation spectrum of real orthogonal operators.

An orthogonal O decomposes into a +1 eigenspace, a -1 eigenspace and 2D
invariant planes on which it rotates by an angle in (0, pi). The
decomposition is read off the real Schur form O = Q T Q^T, whose T is
block diagonal for normal matrices.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
import scipy.linalg

from src.qsim.operators import RealOperator
from src.utils.config import TOLERANCES
from src.utils.exceptions import NonOrthogonalError

logger = logging.getLogger(__name__)

# Accepted orthogonality drift of rotation_spectrum inputs
SPECTRUM_ORTHOGONALITY_TOL = 1e-8

# Schur subdiagonals below this times max(1, ||T||) are zero
SCHUR_SUBDIAGONAL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class RotationBlock:
    """
    A 2D invariant plane with orthonormal basis (u, v).

    The operator maps u -> cos(a) u + sin(a) v and v -> -sin(a) u + cos(a) v.
    """
    angle: float
    u: np.ndarray
    v: np.ndarray


@dataclass(frozen=True, eq=False)
class EigenSummary:
    """Eigenstructure of a real orthogonal operator."""
    dim: int
    plus_one_multiplicity: int
    minus_one_multiplicity: int
    rotation_angles: Tuple[RotationBlock, ...]
    plus_one_basis: np.ndarray = field(repr=False)  # dim x plus_one_multiplicity
    minus_one_basis: np.ndarray = field(repr=False)  # dim x minus_one_multiplicity

    @property
    def angles(self) -> List[float]:
        return [block.angle for block in self.rotation_angles]

    def grouped_angles(self, tol: float = TOLERANCES.spectrum_gap) -> List[Tuple[float, int]]:
        """
        Rotation angles with ties merged.

        Args:
            tol: Angles closer than tol are reported once

        Returns:
            Sorted (angle, multiplicity) pairs; the angle is the group mean
        """
        groups: List[List[float]] = []
        for angle in sorted(self.angles):
            if groups and angle - groups[-1][-1] < tol:
                groups[-1].append(angle)
            else:
                groups.append([angle])
        return [(float(np.mean(g)), len(g)) for g in groups]

    def reconstruct(self) -> np.ndarray:
        """Reassemble the operator from its blocks."""
        p, m = self.plus_one_basis, self.minus_one_basis
        out = p @ p.T - m @ m.T
        for block in self.rotation_angles:
            u, v = block.u[:, None], block.v[:, None]
            c, s = math.cos(block.angle), math.sin(block.angle)
            out += c * (u @ u.T + v @ v.T) + s * (v @ u.T - u @ v.T)
        return out


def rotation_spectrum(op: RealOperator, gap: float = TOLERANCES.spectrum_gap) -> EigenSummary:
    """
    Decompose an orthogonal operator into +-1 eigenspaces and rotation planes.

    Args:
        op: Orthogonal operator (within 1e-8)
        gap: Rotation angles within gap of 0 or pi count as +1 or -1 pairs

    Returns:
        EigenSummary with angles sorted ascending
    """
    residual = op.orthogonality_residual()
    if residual > SPECTRUM_ORTHOGONALITY_TOL:
        raise NonOrthogonalError(
            f"rotation_spectrum needs an orthogonal operator, residual {residual:.3e}",
            context={"residual": residual, "dim": op.dim},
        )

    t, q = scipy.linalg.schur(op.entries, output="real")
    n = op.dim
    plus: List[np.ndarray] = []
    minus: List[np.ndarray] = []
    blocks: List[RotationBlock] = []

    coupled = SCHUR_SUBDIAGONAL_TOL * max(1.0, float(np.linalg.norm(t, ord=2)))
    i = 0
    while i < n:
        if i + 1 < n and abs(t[i + 1, i]) > coupled:
            a = 0.5 * (t[i, i] + t[i + 1, i + 1])
            s = math.sqrt(abs(t[i + 1, i] * t[i, i + 1]))
            angle = math.atan2(s, a)
            u, v = q[:, i].copy(), q[:, i + 1].copy()
            if t[i + 1, i] < 0.0:
                v = -v
            if angle < gap:
                plus.extend([u, v])
            elif angle > math.pi - gap:
                minus.extend([u, v])
            else:
                blocks.append(RotationBlock(angle, u, v))
            i += 2
        else:
            (plus if t[i, i] > 0.0 else minus).append(q[:, i].copy())
            i += 1

    blocks.sort(key=lambda b: b.angle)
    summary = EigenSummary(
        dim=n,
        plus_one_multiplicity=len(plus),
        minus_one_multiplicity=len(minus),
        rotation_angles=tuple(blocks),
        plus_one_basis=np.column_stack(plus) if plus else np.zeros((n, 0)),
        minus_one_basis=np.column_stack(minus) if minus else np.zeros((n, 0)),
    )
    logger.debug(
        f"rotation_spectrum dim={n}: +1 x{summary.plus_one_multiplicity}, "
        f"-1 x{summary.minus_one_multiplicity}, angles={[round(a, 6) for a in summary.angles]}"
    )
    return summary
