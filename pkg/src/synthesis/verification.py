"""
Restricted error of sigma_z-level circuits with the phase ancillae marginalized.

Only SigmaZTilde gates touch a phase register, and each one fixes Phi+ and
negates Phi-. A circuit acting on |xi>|psi>|Phi> therefore splits into branches
in which every SigmaZTilde is the identity (Phi+) or Z on its control (Phi-).

- one shared register: two branches, weights p = ||Phi+||^2 and 1 - p;
  error^2 = lambda_max(p A_I^T A_I + (1 - p) A_Z^T A_Z)
- a fresh register per use: the branch average replaces each SigmaZTilde by
  diag(1, 2p - 1) on its control; error^2 = lambda_max(2 I - (B + B^T)) with
  B = Y^T M X

Only the system qubits are simulated, so circuits with large phase registers fit
the dense cap. For W_alpha the Grover register can also be reduced to its plane,
which leaves three system qubits whatever the register size.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import ClassVar, Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from src.qsim.angles import AngleLike
from src.qsim.circuit import Circuit, GateApp
from src.qsim.gates import Z_GATE, GateKind, SigmaZTilde
from src.qsim.operators import RealOperator
from src.qsim.statevector import StateVector, basis_state, run_circuit
from src.synthesis.params import phase_plus_weight
from src.synthesis.w_alpha import SigmaZApprox, build_W_alpha, target_operator
from src.utils.config import get_settings
from src.utils.exceptions import DimensionCapError, DimensionMismatchError, PreconditionError

logger = logging.getLogger(__name__)

# Data, Grover plane and work qubit
PLANE_SYSTEM_QUBITS = 3


@dataclass(frozen=True)
class ExpectedSign(GateKind):
    """diag(1, value): the branch average of a SigmaZTilde on its control."""
    value: float
    name: ClassVar[str] = "expected_sign"
    action: ClassVar[str] = "diagonal"

    @property
    def arity(self) -> int:
        return 1

    def diagonal(self) -> np.ndarray:
        return np.array([1.0, self.value])


def _top_eigenvalue(sym: np.ndarray) -> float:
    n = sym.shape[0]
    return float(scipy.linalg.eigvalsh(sym, subset_by_index=[n - 1, n - 1])[0])


def _split(circuit: Circuit, n_system: int) -> Tuple[List[GateApp], List[Tuple[int, ...]]]:
    """System gates, each SigmaZTilde cut down to a marker on its control, and the register of each use."""
    apps: List[GateApp] = []
    registers: List[Tuple[int, ...]] = []
    for app in circuit:
        touches_phase = any(q >= n_system for q in app.qubits)
        if isinstance(app.kind, SigmaZTilde) and touches_phase:
            control, register = app.qubits[0], app.qubits[1:]
            if control >= n_system or any(q < n_system for q in register):
                raise PreconditionError(
                    "A SigmaZTilde must have its control on the system and its pairs on a phase register",
                    context={"qubits": list(app.qubits)},
                )
            apps.append(GateApp(app.kind, (control,)))
            registers.append(register)
        elif touches_phase:
            raise PreconditionError(
                f"{app.kind} touches a phase register; only SigmaZTilde may",
                context={"qubits": list(app.qubits)},
            )
        else:
            apps.append(app)
    return apps, registers


def _branch(n_system: int, apps: List[GateApp], replacement: Dict[int, GateKind]) -> Circuit:
    """Replace each SigmaZTilde marker by replacement[k], dropping it when absent."""
    out = []
    for app in apps:
        if isinstance(app.kind, SigmaZTilde) and len(app.qubits) == 1:
            kind = replacement.get(app.kind.k)
            if kind is not None:
                out.append(GateApp(kind, app.qubits))
        else:
            out.append(app)
    return Circuit(n_system, tuple(out))


def marginal_restricted_error(
    target: RealOperator,
    circuit: Circuit,
    n_system: int,
    theta: AngleLike,
    system_ancilla: Optional[StateVector] = None,
    max_qubits: Optional[int] = None,
) -> float:
    """
    Restricted error of a sigma_z-level circuit with every phase register in Phi.

    Args:
        target: Operator U on the first r qubits
        circuit: Circuit whose qubits >= n_system are phase registers
        n_system: Number of system qubits (data plus ordinary ancillae)
        theta: Basis angle the phase ancillae are built from
        system_ancilla: State of system qubits r..n_system-1, all zeros by default
        max_qubits: Cap on n_system, defaults to the configured max_qubits

    Returns:
        The restricted error of the full circuit
    """
    cap = max_qubits if max_qubits is not None else get_settings().max_qubits
    if n_system > cap:
        raise DimensionCapError(
            f"Marginalized verification on {n_system} system qubits exceeds the cap of {cap}",
            context={"n_system": n_system, "cap": cap},
        )
    r = target.n_qubits
    if system_ancilla is None:
        system_ancilla = basis_state("0" * (n_system - r)) if n_system > r else StateVector(0, [1.0])
    if r + system_ancilla.n_qubits != n_system:
        raise DimensionMismatchError(
            f"Target on {r} qubits plus ancilla on {system_ancilla.n_qubits} qubits "
            f"does not match {n_system} system qubits"
        )

    apps, registers = _split(circuit, n_system)
    psi = system_ancilla.amplitudes[:, None]
    inputs = np.kron(np.eye(1 << r), psi)
    expected = np.kron(target.entries, psi)
    sigma_kinds = {a.kind for a in apps if isinstance(a.kind, SigmaZTilde)}
    weights = {kind.k: phase_plus_weight(theta) ** kind.k for kind in sigma_kinds}

    distinct = set(registers)
    if len(distinct) <= 1:
        with_z = run_circuit(inputs, _branch(n_system, apps, {k: Z_GATE for k in weights})) - expected
        without = run_circuit(inputs, _branch(n_system, apps, {})) - expected
        p = next(iter(weights.values()), 0.0)
        gram = p * (without.T @ without) + (1.0 - p) * (with_z.T @ with_z)
        error_sq = _top_eigenvalue(gram)
        mode = "shared"
    else:
        flat = [q for register in registers for q in register]
        if len(flat) != len(set(flat)):
            raise PreconditionError("Phase registers must be either one shared register or pairwise disjoint")
        average = {k: ExpectedSign(2.0 * p - 1.0) for k, p in weights.items()}
        averaged = run_circuit(inputs, _branch(n_system, apps, average))
        b = expected.T @ averaged
        error_sq = _top_eigenvalue(2.0 * np.eye(b.shape[0]) - (b + b.T))
        mode = "fresh"
    error = math.sqrt(max(error_sq, 0.0))
    logger.debug(
        f"marginal_restricted_error ({mode}, {len(registers)} sigma_z uses, {n_system} system qubits): {error:.3e}"
    )
    return error


def plane_restricted_error(alpha: AngleLike, theta: AngleLike, k: int, sigma_z: SigmaZApprox) -> float:
    """
    Restricted error of the sigma_z-level W_alpha with its Grover register held in the plane.

    On |xi>|0^>|0>_work every gate of W_alpha keeps the Grover register in
    span{|0^>, |1^>}, so the register is simulated as a single qubit and the
    system has three qubits for any k. The result equals the dense
    marginal_restricted_error of build_W_alpha(alpha, theta, k, sigma_z).

    Args:
        alpha: Target rotation angle
        theta: Basis angle
        k: Grover register pairs
        sigma_z: Phase-ancilla size and policy

    Returns:
        The restricted error
    """
    circuit = build_W_alpha(alpha, theta, k, sigma_z, plane=True)
    return marginal_restricted_error(
        target_operator(alpha), circuit, PLANE_SYSTEM_QUBITS, theta, max_qubits=PLANE_SYSTEM_QUBITS
    )
