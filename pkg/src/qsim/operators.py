"""
Dense real operators and the restricted approximation error.

- circuit_unitary materializes a circuit as a dense 2^n x 2^n matrix (capped)
- restricted_error measures how far a circuit is from a target on the data
  qubits when the ancilla register starts in a fixed state
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from src.qsim.circuit import Circuit
from src.qsim.statevector import StateVector, run_circuit
from src.utils.config import TOLERANCES, get_settings
from src.utils.exceptions import DimensionCapError, DimensionMismatchError, NonFiniteInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RealOperator:
    """A dense real matrix of dimension 2^n."""
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatchError(f"Operator must be square, got shape {entries.shape}")
        dim = entries.shape[0]
        if dim < 1 or dim & (dim - 1):
            raise DimensionMismatchError(f"Operator dimension {dim} is not a power of two")
        if not np.all(np.isfinite(entries)):
            raise NonFiniteInputError("Operator entries must be finite")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls, n_qubits: int) -> "RealOperator":
        return cls(np.eye(1 << n_qubits))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    @property
    def T(self) -> "RealOperator":
        return RealOperator(self.entries.T)

    def __matmul__(self, other: "RealOperator") -> "RealOperator":
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Cannot multiply {self.dim}x{self.dim} by {other.dim}x{other.dim}")
        return RealOperator(self.entries @ other.entries)

    def kron(self, other: "RealOperator") -> "RealOperator":
        return RealOperator(np.kron(self.entries, other.entries))

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def orthogonality_residual(self) -> float:
        """max |(O^T O - I)_ij|."""
        return float(np.max(np.abs(self.entries.T @ self.entries - np.eye(self.dim))))

    def is_orthogonal(self, tol: float = TOLERANCES.orthogonality) -> bool:
        return self.orthogonality_residual() <= tol

    def distance(self, other: "RealOperator") -> float:
        """Operator-norm distance."""
        return float(np.linalg.norm(self.entries - other.entries, ord=2))

    def __repr__(self) -> str:
        return f"RealOperator(dim={self.dim})"


def _check_cap(n_qubits: int, cap: int, what: str) -> None:
    if n_qubits > cap:
        raise DimensionCapError(
            f"{what} on {n_qubits} qubits exceeds the cap of {cap}",
            context={"n_qubits": n_qubits, "cap": cap},
        )


def circuit_unitary(circuit: Circuit, max_qubits: Optional[int] = None) -> RealOperator:
    """
    Dense operator of a circuit; column j is the image of basis state j.

    Args:
        circuit: Circuit to materialize
        max_qubits: Qubit cap, defaults to the configured max_qubits

    Returns:
        The circuit's RealOperator
    """
    cap = max_qubits if max_qubits is not None else get_settings().max_qubits
    _check_cap(circuit.n_qubits, cap, "circuit_unitary")
    return RealOperator(run_circuit(np.eye(1 << circuit.n_qubits), circuit))


def restricted_error(
    target: RealOperator,
    circuit: Circuit,
    ancilla: StateVector,
    max_state_qubits: Optional[int] = None,
) -> float:
    """
    Worst-case deviation of a circuit from a target with the ancilla fixed.

    Returns max over unit xi of || C (xi (x) psi) - (U xi) (x) psi ||, the
    largest singular value of the 2^N x 2^r difference map. Data qubits are
    the first r qubits of the circuit.

    Args:
        target: Operator U on r qubits
        circuit: Circuit on N qubits
        ancilla: State psi on N - r qubits
        max_state_qubits: Qubit cap, defaults to the configured max_state_qubits

    Returns:
        The restricted error
    """
    r = target.n_qubits
    if r + ancilla.n_qubits != circuit.n_qubits:
        raise DimensionMismatchError(
            f"Target on {r} qubits plus ancilla on {ancilla.n_qubits} qubits "
            f"does not match a circuit on {circuit.n_qubits} qubits",
            context={"r": r, "ancilla": ancilla.n_qubits, "n_qubits": circuit.n_qubits},
        )
    cap = max_state_qubits if max_state_qubits is not None else get_settings().max_state_qubits
    _check_cap(circuit.n_qubits, cap, "restricted_error")

    psi = ancilla.amplitudes[:, None]
    inputs = np.kron(np.eye(1 << r), psi)
    expected = np.kron(target.entries, psi)
    diff = run_circuit(inputs, circuit) - expected
    # Largest singular value via the small 2^r x 2^r Gram matrix
    gram = diff.T @ diff
    top = scipy.linalg.eigvalsh(gram, subset_by_index=[gram.shape[0] - 1, gram.shape[0] - 1])[0]
    error = math.sqrt(max(float(top), 0.0))
    logger.debug(f"restricted_error on {circuit.n_qubits} qubits (r={r}): {error:.3e}")
    return error
