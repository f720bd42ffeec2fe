"""
Approximate preparation of |phi_{alpha/2}> = cos(alpha/2)|0> + sin(alpha/2)|1>.

Register layout: qubit 0 is the output qubit, qubits 1..2k hold k pairs, pair
i on (1 + 2i, 2 + 2i). With |0^> = |0...0> and |1~> = T^(x)k |0^>, the overlap
<0^|1~> = cos^(2k) theta = sin(gamma). Each Grover iteration (the reflection
negating |0^> followed by the reflection about |1~>) rotates the plane
span{|0^>, |1^>} by 2 gamma towards |0^>.

Every gate on the pairs keeps them inside that plane when they start in |0^>,
so plane=True builds the same circuit with the pairs replaced by a single
qubit carrying the plane coordinates.
"""

from __future__ import annotations

import logging
import math
from typing import Tuple

import numpy as np

from src.qsim.angles import Angle, AngleLike, as_angle
from src.qsim.circuit import Circuit, ControlledBlock
from src.qsim.gates import CNOT_GATE, MarkNonZeroFlip, ReflectZero, SReflect, STheta, SThetaInv
from src.qsim.statevector import basis_state, simulate
from src.synthesis.params import gamma_for, grover_count_for
from src.utils.exceptions import PreconditionError

logger = logging.getLogger(__name__)


def build_T_theta(theta: AngleLike) -> Circuit:
    """T_theta = U_{-theta}[0] . CNOT[0,1] . U_theta[0]; an involution."""
    angle = as_angle(theta)
    return Circuit.from_ops(
        2,
        [
            (STheta(angle), (0,)),
            (CNOT_GATE, (0, 1)),
            (SThetaInv(angle), (0,)),
        ],
    )


def t_layer(theta: AngleLike, k: int) -> Circuit:
    """T_theta on each of k pairs of a 2k-qubit register."""
    if k < 1:
        raise PreconditionError(f"T layer needs k >= 1, got {k}")
    t = build_T_theta(theta)
    layer = Circuit(2 * k)
    for i in range(k):
        layer = layer + t.remap([2 * i, 2 * i + 1], 2 * k)
    return layer


def _grover_step(layer: Circuit) -> Circuit:
    m = layer.n_qubits
    everything = tuple(range(m))
    return (
        Circuit.from_ops(m, [(ReflectZero(m), everything)])
        + layer
        + Circuit.from_ops(m, [(ReflectZero(m, negated=True), everything)])
        + layer
    )


def grover_iteration(theta: AngleLike, k: int) -> Circuit:
    """
    One Grover step on the 2k-qubit register.

    The reflection negating |0^> acts first, then T^(x)k . D . T^(x)k with D
    the sign gate (+1 on |0^>, -1 elsewhere), i.e. the reflection about |1~>.
    """
    return _grover_step(t_layer(theta, k))


def plane_layer(theta: AngleLike, k: int) -> Circuit:
    """
    T^(x)k restricted to the Grover plane, as one qubit with |0> = |0^> and |1> = |1^>.

    T^(x)k swaps |0^> and |1~> = sin(gamma)|0^> + cos(gamma)|1^>, which on the
    plane is the reflection taking |0> to |1~>.
    """
    if k < 1:
        raise PreconditionError(f"Plane layer needs k >= 1, got {k}")
    beta = Angle(math.pi / 2 - gamma_for(theta, k))
    return Circuit.from_ops(1, [(SReflect(beta), (0,))])


def t_theta_column(theta: AngleLike, k: int) -> np.ndarray:
    """|1~> = T^(x)k |0^>."""
    t = as_angle(theta).radians
    c, s = math.cos(t), math.sin(t)
    pair = np.array([c * c, s * s, -c * s, c * s])
    out = np.ones(1)
    for _ in range(k):
        out = np.kron(out, pair)
    return out


def grover_plane_basis(theta: AngleLike, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Orthonormal basis {|0^>, |1^>} of the Grover plane.

    Returns:
        (zero_hat, one_hat), each of length 4^k
    """
    if k < 1:
        raise PreconditionError(f"Grover plane needs k >= 1, got {k}")
    tilde = t_theta_column(theta, k)
    zero_hat = np.zeros(tilde.size)
    zero_hat[0] = 1.0
    one_hat = tilde - tilde[0] * zero_hat
    norm = np.linalg.norm(one_hat)
    if norm <= 1e-15:
        raise PreconditionError("|1~> coincides with |0^>; theta is not basis-changing")
    return zero_hat, one_hat / norm


def build_W_half_alpha(alpha: AngleLike, theta: AngleLike, k: int, plane: bool = False) -> Circuit:
    """
    Approximate W_{alpha/2} on 1 + 2k qubits.

    Steps: T^(x)k on the pairs; the Grover loop (plus the reflection negating
    |0^> when alpha/2 >= pi/2); flip qubit 0 iff the pairs are not all zero;
    T^(x)k on the pairs controlled by qubit 0.

    Args:
        alpha: Target rotation angle
        theta: Basis angle
        k: Number of pairs, >= 1
        plane: Replace the pairs by one qubit holding the Grover plane (see
            plane_layer); the circuit then has 2 qubits

    Returns:
        Circuit with ||W (|0>|0^>) - |phi_{alpha/2}>|0^>|| <= 2 gamma
    """
    if k < 1:
        raise PreconditionError(f"W_(alpha/2) needs k >= 1, got {k}")
    gamma = gamma_for(theta, k)
    grover_T, reflected = grover_count_for(alpha, gamma)
    layer = plane_layer(theta, k) if plane else t_layer(theta, k)
    m = layer.n_qubits
    n = 1 + m
    register = list(range(1, n))

    circuit = layer.remap(register, n)
    circuit = circuit + _grover_step(layer).remap(register, n).repeated(grover_T)
    if reflected:
        circuit = circuit + Circuit.from_ops(n, [(ReflectZero(m), tuple(register))])
    circuit = circuit + Circuit.from_ops(
        n,
        [
            (MarkNonZeroFlip(m), (*register, 0)),
            (ControlledBlock(layer), (0, *register)),
        ],
    )
    logger.debug(
        f"W_(alpha/2): k={k}, gamma={gamma:.3e}, T={grover_T}, reflected={reflected}, "
        f"{'plane, ' if plane else ''}{len(circuit)} gates"
    )
    return circuit


def oracle_W_half_alpha(alpha: AngleLike, k: int) -> Circuit:
    """Exact W_{alpha/2}: U_{alpha/2} on qubit 0, pairs untouched."""
    return Circuit.from_ops(1 + 2 * k, [(STheta(as_angle(alpha).half()), (0,))])


def preparation_error(circuit: Circuit, alpha: AngleLike) -> float:
    """
    ||W |0...0> - |phi_{alpha/2}> (x) |0...0>|| by simulation.

    Args:
        circuit: Candidate W_{alpha/2}, output on qubit 0
        alpha: Target rotation angle

    Returns:
        Euclidean distance
    """
    half = as_angle(alpha).half().radians
    out = simulate(circuit, basis_state("0" * circuit.n_qubits)).amplitudes
    rest = np.zeros(1 << (circuit.n_qubits - 1))
    rest[0] = 1.0
    expected = np.kron([math.cos(half), math.sin(half)], rest)
    return float(np.linalg.norm(out - expected))
