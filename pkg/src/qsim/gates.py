"""
Gate kinds of the real-amplitude circuit IR.

Every gate kind denotes a real orthogonal operator on its arity. A kind
declares how it acts so the simulator can pick a cheap path:

- "flip":        X / CNOT / Toffoli, a bit flip on the last operand when all
                 other operands are 1
- "diagonal":    a +-1 diagonal (Z, ReflectZero)
- "permutation": a classical reversible permutation of basis states
                 (MarkNonZeroFlip, SigmaZTilde)
- "dense":       a small dense matrix (H, STheta, SThetaInv, SReflect)

Operand order is significant; operand 0 is the most significant local bit.
ControlledBlock lives in circuit.py because it wraps a Circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, ClassVar, Dict

import numpy as np

from src.qsim.angles import Angle


def rotation_matrix(radians: float) -> np.ndarray:
    """U_beta = [[cos b, -sin b], [sin b, cos b]]."""
    c, s = math.cos(radians), math.sin(radians)
    return np.array([[c, -s], [s, c]])


def reflection_matrix(radians: float) -> np.ndarray:
    """[[cos b, sin b], [sin b, -cos b]]: the reflection taking |0> to cos b|0> + sin b|1>."""
    c, s = math.cos(radians), math.sin(radians)
    return np.array([[c, s], [s, -c]])


class GateKind:
    """Base class for gate kinds."""

    name: ClassVar[str] = ""
    action: ClassVar[str] = "dense"

    @property
    def arity(self) -> int:
        raise NotImplementedError

    def inverse(self) -> "GateKind":
        return self

    def params(self) -> Dict[str, Any]:
        """Serializable parameters (everything except the kind name and qubits)."""
        return {}

    def matrix(self) -> np.ndarray:
        """Dense 2^arity x 2^arity matrix."""
        if self.action == "diagonal":
            return np.diag(self.diagonal())
        if self.action in ("permutation", "flip"):
            perm = self.permutation()
            out = np.zeros((perm.size, perm.size))
            out[perm, np.arange(perm.size)] = 1.0
            return out
        raise NotImplementedError(f"{self.name} has no dense matrix")

    def diagonal(self) -> np.ndarray:
        raise NotImplementedError(f"{self.name} is not diagonal")

    def permutation(self) -> np.ndarray:
        """perm[i] = image of local basis index i."""
        raise NotImplementedError(f"{self.name} is not a permutation")

    def __str__(self) -> str:
        extra = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.name}({extra})" if extra else self.name


@dataclass(frozen=True)
class _FlipGate(GateKind):
    """Flip the last operand iff all preceding operands are 1."""

    action: ClassVar[str] = "flip"
    n_controls: ClassVar[int] = 0

    @property
    def arity(self) -> int:
        return self.n_controls + 1

    def permutation(self) -> np.ndarray:
        return _flip_permutation(self.n_controls)


@dataclass(frozen=True)
class X(_FlipGate):
    name: ClassVar[str] = "x"
    n_controls: ClassVar[int] = 0


@dataclass(frozen=True)
class CNOT(_FlipGate):
    """Operands (control, target)."""
    name: ClassVar[str] = "cnot"
    n_controls: ClassVar[int] = 1


@dataclass(frozen=True)
class Toffoli(_FlipGate):
    """Operands (control, control, target)."""
    name: ClassVar[str] = "toffoli"
    n_controls: ClassVar[int] = 2


@dataclass(frozen=True)
class Z(GateKind):
    name: ClassVar[str] = "z"
    action: ClassVar[str] = "diagonal"

    @property
    def arity(self) -> int:
        return 1

    def diagonal(self) -> np.ndarray:
        return np.array([1.0, -1.0])


@dataclass(frozen=True)
class H(GateKind):
    name: ClassVar[str] = "h"

    @property
    def arity(self) -> int:
        return 1

    def matrix(self) -> np.ndarray:
        return np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


@dataclass(frozen=True)
class STheta(GateKind):
    """The basis rotation U_theta."""
    theta: Angle
    name: ClassVar[str] = "s_theta"

    @property
    def arity(self) -> int:
        return 1

    def matrix(self) -> np.ndarray:
        return rotation_matrix(self.theta.radians)

    def inverse(self) -> GateKind:
        return SThetaInv(self.theta)

    def params(self) -> Dict[str, Any]:
        return {"theta": self.theta.radians}


@dataclass(frozen=True)
class SThetaInv(GateKind):
    """U_{-theta} = U_theta^T."""
    theta: Angle
    name: ClassVar[str] = "s_theta_inv"

    @property
    def arity(self) -> int:
        return 1

    def matrix(self) -> np.ndarray:
        return rotation_matrix(-self.theta.radians)

    def inverse(self) -> GateKind:
        return STheta(self.theta)

    def params(self) -> Dict[str, Any]:
        return {"theta": self.theta.radians}


@dataclass(frozen=True)
class SReflect(GateKind):
    """A reflection basis gate; see reflection_matrix."""
    beta: Angle
    name: ClassVar[str] = "s_reflect"

    @property
    def arity(self) -> int:
        return 1

    def matrix(self) -> np.ndarray:
        return reflection_matrix(self.beta.radians)

    def params(self) -> Dict[str, Any]:
        return {"beta": self.beta.radians}


@dataclass(frozen=True)
class ReflectZero(GateKind):
    """
    Diagonal reflection on m qubits.

    negated=False: -1 on |0...0>, +1 elsewhere.
    negated=True:  +1 on |0...0>, -1 elsewhere.
    """
    m: int
    negated: bool = False
    name: ClassVar[str] = "reflect_zero"
    action: ClassVar[str] = "diagonal"

    @property
    def arity(self) -> int:
        return self.m

    def diagonal(self) -> np.ndarray:
        sign = -1.0 if self.negated else 1.0
        out = np.full(1 << self.m, sign)
        out[0] = -sign
        return out

    def params(self) -> Dict[str, Any]:
        return {"arity": self.m, "negated": self.negated}


@dataclass(frozen=True)
class MarkNonZeroFlip(GateKind):
    """Operands (r_1..r_m, target): flip target iff the register is not all zeros."""
    m: int
    name: ClassVar[str] = "mark_non_zero_flip"
    action: ClassVar[str] = "permutation"

    @property
    def arity(self) -> int:
        return self.m + 1

    def permutation(self) -> np.ndarray:
        return _mark_non_zero_permutation(self.m)

    def params(self) -> Dict[str, Any]:
        return {"arity": self.m}


@dataclass(frozen=True)
class SigmaZTilde(GateKind):
    """
    Operands (b0, b_1, b'_1, ..., b_k, b'_k).

    If b0 = 1 and some pair has b_i == b'_i, flip both bits of the first such
    pair; otherwise do nothing. An involution.
    """
    k: int
    name: ClassVar[str] = "sigma_z_tilde"
    action: ClassVar[str] = "permutation"

    @property
    def arity(self) -> int:
        return 2 * self.k + 1

    def permutation(self) -> np.ndarray:
        return _sigma_z_tilde_permutation(self.k)

    def params(self) -> Dict[str, Any]:
        return {"k": self.k}


# Shared instances for parameterless kinds
X_GATE = X()
Z_GATE = Z()
H_GATE = H()
CNOT_GATE = CNOT()
TOFFOLI_GATE = Toffoli()


@lru_cache(maxsize=None)
def _flip_permutation(n_controls: int) -> np.ndarray:
    size = 1 << (n_controls + 1)
    idx = np.arange(size)
    controls_set = (idx >> 1) == (1 << n_controls) - 1
    out = np.where(controls_set, idx ^ 1, idx)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _mark_non_zero_permutation(m: int) -> np.ndarray:
    idx = np.arange(1 << (m + 1))
    out = np.where((idx >> 1) != 0, idx ^ 1, idx)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=16)
def _sigma_z_tilde_permutation(k: int) -> np.ndarray:
    arity = 2 * k + 1
    idx = np.arange(1 << arity)
    control = (idx >> (arity - 1)) & 1
    out = idx.copy()
    pending = control.astype(bool)
    for i in range(k):
        shift_b = arity - 2 - 2 * i
        shift_bp = shift_b - 1
        equal = ((idx >> shift_b) & 1) == ((idx >> shift_bp) & 1)
        hit = pending & equal
        out[hit] ^= (1 << shift_b) | (1 << shift_bp)
        pending &= ~equal
    out.setflags(write=False)
    return out
