"""
Real-amplitude statevector simulation.

States are stored as flat vectors of length 2^n; gates act on the reshaped
(2,)*n tensor, where axis q is qubit q (qubit 0 is the most significant bit of
the basis index). The kernel also accepts a trailing batch axis, so a whole
block of columns (for example the identity, for circuit_unitary) is pushed
through a circuit in one pass.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from src.qsim.circuit import Circuit, ControlledBlock, validate_application
from src.qsim.gates import GateKind
from src.utils.config import TOLERANCES
from src.utils.exceptions import DimensionMismatchError, NonFiniteInputError, PreconditionError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Tensor kernel
# ---------------------------------------------------------------------------

def _apply_flip(tensor: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Swap the target=0 and target=1 slices where every control axis is 1."""
    out = tensor.copy()
    lo = [slice(None)] * tensor.ndim
    for axis in axes[:-1]:
        lo[axis] = 1
    hi = list(lo)
    lo[axes[-1]] = 0
    hi[axes[-1]] = 1
    lo, hi = tuple(lo), tuple(hi)
    out[lo] = tensor[hi]
    out[hi] = tensor[lo]
    return out


def _apply_local(tensor: np.ndarray, kind: GateKind, axes: Sequence[int]) -> np.ndarray:
    """Apply a dense, diagonal or permutation gate on the given axes."""
    arity = len(axes)
    front = np.moveaxis(tensor, list(axes), list(range(arity)))
    shape = front.shape
    flat = front.reshape(1 << arity, -1)
    if kind.action == "diagonal":
        result = kind.diagonal()[:, None] * flat
    elif kind.action == "permutation":
        result = np.empty_like(flat)
        result[kind.permutation()] = flat
    else:
        result = kind.matrix() @ flat
    return np.moveaxis(result.reshape(shape), list(range(arity)), list(axes))


def _apply_controlled(tensor: np.ndarray, block: ControlledBlock, axes: Sequence[int]) -> np.ndarray:
    """Run the inner circuit on the control=1 slice."""
    control, targets = axes[0], axes[1:]
    out = tensor.copy()
    index = [slice(None)] * tensor.ndim
    index[control] = 1
    index = tuple(index)
    # Axes above the control shift down by one once it is sliced away
    inner_axes = [a - 1 if a > control else a for a in targets]
    sub = tensor[index]
    for app in block.inner.gates:
        sub = apply_kind(sub, app.kind, [inner_axes[q] for q in app.qubits])
    out[index] = sub
    return out


def apply_kind(tensor: np.ndarray, kind: GateKind, axes: Sequence[int]) -> np.ndarray:
    """
    Apply a gate kind to a (2,)*n (+ batch) tensor on the given qubit axes.

    Args:
        tensor: State tensor, qubit axes first, optional trailing batch axis
        kind: Gate kind
        axes: Tensor axes of the gate operands, in operand order

    Returns:
        New tensor; the input is not modified
    """
    if kind.action == "flip":
        return _apply_flip(tensor, axes)
    if kind.action == "controlled":
        return _apply_controlled(tensor, kind, axes)
    return _apply_local(tensor, kind, axes)


def run_circuit(columns: np.ndarray, circuit: Circuit) -> np.ndarray:
    """
    Push a block of column vectors through a circuit.

    Args:
        columns: Array of shape (2^n,) or (2^n, B)
        circuit: Circuit on n qubits

    Returns:
        Array of the same shape with the circuit applied to every column
    """
    n = circuit.n_qubits
    if columns.shape[0] != 1 << n:
        raise DimensionMismatchError(
            f"Expected leading dimension {1 << n}, got {columns.shape[0]}",
            context={"n_qubits": n, "shape": list(columns.shape)},
        )
    batch = columns.shape[1:]
    tensor = np.asarray(columns, dtype=float).reshape((2,) * n + batch)
    for app in circuit.gates:
        tensor = apply_kind(tensor, app.kind, app.qubits)
    return tensor.reshape(columns.shape)


# ---------------------------------------------------------------------------
# StateVector
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StateVector:
    """
    A unit real vector of length 2^n_qubits.

    n_qubits = 0 is the scalar state [1.0] of an empty register.
    """
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=float).reshape(-1)
        if self.n_qubits < 0 or amps.size != 1 << self.n_qubits:
            raise DimensionMismatchError(
                f"State on {self.n_qubits} qubits needs {1 << max(self.n_qubits, 0)} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise NonFiniteInputError("State amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > TOLERANCES.input_norm:
            raise PreconditionError(
                f"State must be normalized, norm is {norm:.3e}",
                context={"norm": norm},
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[float]) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=float).reshape(-1)
        n = int(round(math.log2(amps.size))) if amps.size > 0 else -1
        if n < 0 or 1 << n != amps.size:
            raise DimensionMismatchError(f"Amplitude count {amps.size} is not a power of two")
        return cls(n, amps)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def kron(self, other: "StateVector") -> "StateVector":
        """self on the leading qubits, other on the trailing ones."""
        return StateVector(self.n_qubits + other.n_qubits, np.kron(self.amplitudes, other.amplitudes))

    def inner(self, other: "StateVector") -> float:
        return float(self.amplitudes @ other.amplitudes)

    def distance(self, other: "StateVector") -> float:
        return float(np.linalg.norm(self.amplitudes - other.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits})"


def basis_state(bits: Union[str, Sequence[int]]) -> StateVector:
    """
    Computational basis state from a bit string, qubit 0 first.

    Args:
        bits: "0110" or [0, 1, 1, 0]

    Returns:
        The basis StateVector
    """
    values = [int(b) for b in bits]
    if any(b not in (0, 1) for b in values):
        raise PreconditionError(f"Bits must be 0 or 1, got {bits!r}")
    n = len(values)
    index = 0
    for b in values:
        index = (index << 1) | b
    amps = np.zeros(1 << n)
    amps[index] = 1.0
    return StateVector(n, amps)


def product_state(factors: Sequence[Union[StateVector, Sequence[float]]]) -> StateVector:
    """Tensor product of single-register states, first factor most significant."""
    state = StateVector(0, np.ones(1))
    for factor in factors:
        if not isinstance(factor, StateVector):
            factor = StateVector.from_amplitudes(factor)
        state = state.kron(factor)
    return state


def apply_gate(state: StateVector, gate: GateKind, qubits: Sequence[int]) -> StateVector:
    """
    Apply one gate to the named qubits of a state.

    Args:
        state: Normalized input state
        gate: Gate kind
        qubits: Operand qubits, in operand order

    Returns:
        The image state
    """
    if state.n_qubits < 1:
        raise DimensionMismatchError("Cannot apply a gate to an empty register")
    operands = validate_application(gate, qubits, state.n_qubits)
    tensor = state.amplitudes.reshape((2,) * state.n_qubits)
    out = apply_kind(tensor, gate, operands).reshape(-1)
    return StateVector(state.n_qubits, out)


def simulate(circuit: Circuit, state: StateVector) -> StateVector:
    """
    Apply a circuit to a state.

    Args:
        circuit: Circuit on n qubits
        state: Input state on n qubits

    Returns:
        Output state
    """
    if state.n_qubits != circuit.n_qubits:
        raise DimensionMismatchError(
            f"Circuit on {circuit.n_qubits} qubits applied to a {state.n_qubits}-qubit state"
        )
    return StateVector(state.n_qubits, run_circuit(np.array(state.amplitudes), circuit))
