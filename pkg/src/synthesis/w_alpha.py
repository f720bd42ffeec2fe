"""
W_alpha and the IR passes that take it to the sigma_z-approximated level.

W_alpha = W_{alpha/2} . D . W_{alpha/2}^T . Z[0], where D is +1 on the all-zeros
string of every qubit and -1 elsewhere. On |xi>|0...0> it acts as U_alpha:
Z and the reflection about |phi_{alpha/2}> compose to a rotation by alpha.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Literal, Optional, Union

from src.qsim.angles import AngleLike, as_angle
from src.qsim.circuit import Circuit, ControlledBlock, GateApp
from src.qsim.gates import X_GATE, Z_GATE, MarkNonZeroFlip, ReflectZero, SigmaZTilde, Z, rotation_matrix
from src.qsim.operators import RealOperator
from src.qsim.statevector import StateVector, basis_state
from src.synthesis.grover import build_W_half_alpha, oracle_W_half_alpha
from src.synthesis.params import AncillaPolicy
from src.synthesis.sigma_z import phase_ancilla
from src.utils.exceptions import AngleDegeneracyError, LoweringError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SigmaZApprox:
    """Replace every Z by a SigmaZTilde on a phase ancilla of k2 pairs."""
    k2: int
    policy: AncillaPolicy = "shared"


SigmaZMode = Union[Literal["exact"], SigmaZApprox]


def target_operator(alpha: AngleLike) -> RealOperator:
    """U_alpha on one qubit."""
    return RealOperator(rotation_matrix(as_angle(alpha).radians))


def _assemble(w_half: Circuit) -> Circuit:
    n = w_half.n_qubits
    return (
        Circuit.from_ops(n, [(Z_GATE, (0,))])
        + w_half.inverse()
        + Circuit.from_ops(n, [(ReflectZero(n, negated=True), tuple(range(n)))])
        + w_half
    )


def expand_reflections(circuit: Circuit, work: Optional[int] = None) -> Circuit:
    """
    Rewrite every ReflectZero with a work qubit.

    ReflectZero(m) on r becomes MarkNonZeroFlip(r -> w), then Z on w (wrapped in
    X for the non-negated sign), then MarkNonZeroFlip again. The work qubit
    must start and end in |0>.

    Args:
        circuit: Circuit possibly holding ReflectZero gates
        work: Existing clean qubit to use; appended as a new last qubit when None

    Returns:
        Equivalent circuit without ReflectZero
    """
    if work is None:
        n = circuit.n_qubits + 1
        work = circuit.n_qubits
    else:
        n = circuit.n_qubits
        if not 0 <= work < n:
            raise PreconditionError(f"Work qubit {work} is outside the circuit")
    apps: List[GateApp] = []
    for app in circuit:
        kind = app.kind
        if isinstance(kind, ControlledBlock) and "reflect_zero" in kind.inner.kinds():
            raise LoweringError("Reflections inside a controlled block are not expanded")
        if not isinstance(kind, ReflectZero):
            apps.append(app)
            continue
        if work in app.qubits:
            raise PreconditionError(f"Work qubit {work} is an operand of {kind}")
        mark = GateApp(MarkNonZeroFlip(kind.m), (*app.qubits, work))
        apps.append(mark)
        if not kind.negated:
            apps.append(GateApp(X_GATE, (work,)))
        apps.append(GateApp(Z_GATE, (work,)))
        if not kind.negated:
            apps.append(GateApp(X_GATE, (work,)))
        apps.append(mark)
    return Circuit(n, tuple(apps))


def approximate_sigma_z(circuit: Circuit, theta: AngleLike, k2: int, policy: AncillaPolicy = "shared") -> Circuit:
    """
    Replace every Z by a SigmaZTilde on a phase register appended after the circuit's qubits.

    Args:
        circuit: Circuit holding Z gates
        theta: Basis angle of the phase ancillae
        k2: Pairs per phase register
        policy: "shared" uses one register for all Z, "fresh" one per Z

    Returns:
        Circuit on n + 2 k2 (shared) or n + 2 k2 * uses (fresh) qubits
    """
    if k2 < 1:
        raise PreconditionError(f"k2 must be >= 1, got {k2}")
    if policy not in ("shared", "fresh"):
        raise PreconditionError(f"Unknown ancilla policy {policy!r}")
    angle = as_angle(theta)
    if angle.is_multiple_of_half_pi():
        raise AngleDegeneracyError(
            f"theta = {angle} is a multiple of pi/2; the phase ancilla is a basis state",
            angle=angle.radians,
            excluded_step="pi/2",
        )
    base = circuit.n_qubits
    width = 2 * k2
    uses = sum(1 for app in circuit if isinstance(app.kind, Z))
    n = base + (width if policy == "shared" else width * uses)
    apps: List[GateApp] = []
    used = 0
    for app in circuit:
        if isinstance(app.kind, ControlledBlock) and "z" in app.kind.inner.kinds():
            raise LoweringError("Z inside a controlled block cannot take a phase ancilla")
        if not isinstance(app.kind, Z):
            apps.append(app)
            continue
        start = base if policy == "shared" else base + width * used
        used += 1
        apps.append(GateApp(SigmaZTilde(k2), (app.qubits[0], *range(start, start + width))))
    logger.debug(f"approximate_sigma_z: {uses} uses, {policy} registers of {k2} pairs")
    return Circuit(n, tuple(apps))


def build_W_alpha(
    alpha: AngleLike,
    theta: AngleLike,
    k: int,
    sigma_z_mode: SigmaZMode = "exact",
    oracle: bool = False,
    plane: bool = False,
) -> Circuit:
    """
    Assemble W_alpha on 1 + 2k qubits, data on qubit 0.

    Args:
        alpha: Target rotation angle
        theta: Basis angle
        k: Grover register pairs
        sigma_z_mode: "exact", or SigmaZApprox to expand reflections onto a
            work qubit (index 1 + 2k) and replace Z by phase-ancilla circuits
        oracle: Substitute the exact W_{alpha/2}
        plane: Hold the Grover register as one plane qubit, so the circuit has
            2 qubits before the work qubit (index 2) and phase registers

    Returns:
        Circuit
    """
    w_half = oracle_W_half_alpha(alpha, k) if oracle else build_W_half_alpha(alpha, theta, k, plane=plane)
    circuit = _assemble(w_half)
    if sigma_z_mode == "exact":
        return circuit
    if not isinstance(sigma_z_mode, SigmaZApprox):
        raise PreconditionError(f"Unknown sigma_z mode {sigma_z_mode!r}")
    expanded = expand_reflections(circuit)
    return approximate_sigma_z(expanded, theta, sigma_z_mode.k2, sigma_z_mode.policy)


def w_alpha_ancilla(
    k: int,
    theta: Optional[AngleLike] = None,
    sigma_z_mode: SigmaZMode = "exact",
    registers: int = 0,
) -> StateVector:
    """
    Ancilla state for build_W_alpha with the data on qubit 0.

    Args:
        k: Grover register pairs
        theta: Basis angle, needed for phase ancillae
        sigma_z_mode: The mode the circuit was built with
        registers: Number of phase registers (1 for shared, the Z count for fresh)

    Returns:
        |0>^(2k) for the exact mode; |0>^(2k) |0>_work Phi_k2^(x)registers otherwise
    """
    if sigma_z_mode == "exact":
        return basis_state("0" * (2 * k))
    state = basis_state("0" * (2 * k + 1))
    phi = phase_ancilla(theta, sigma_z_mode.k2)
    for _ in range(registers):
        state = state.kron(phi)
    return state
