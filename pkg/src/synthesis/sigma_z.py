"""
sigma_z from {Toffoli, S} with a phase ancilla.

The phase ancilla of size k is Phi_k = (U_theta|0> (x) U_theta|1>)^(x)k on 2k
qubits. It splits as Phi+ (every pair holds differing bits) plus Phi- (the
rest). SigmaZTilde fixes Phi+ and negates Phi-, so conditioned on a control
it acts as sigma_z up to an error 2 ||Phi+|| = 2 (cos^4 + sin^4)^(k/2).
"""

from __future__ import annotations

import logging
import math
from typing import Tuple

import numpy as np

from src.qsim.angles import AngleLike, as_angle
from src.qsim.circuit import Circuit
from src.qsim.gates import STheta, SigmaZTilde
from src.qsim.statevector import StateVector
from src.utils.exceptions import AngleDegeneracyError, PreconditionError

logger = logging.getLogger(__name__)


def _pair_amplitudes(theta: AngleLike) -> np.ndarray:
    t = as_angle(theta).radians
    c, s = math.cos(t), math.sin(t)
    return np.kron([c, s], [-s, c])


def phase_ancilla(theta: AngleLike, k: int) -> StateVector:
    """
    The phase ancilla Phi_k on 2k qubits.

    Args:
        theta: Basis angle
        k: Number of pairs, >= 0

    Returns:
        StateVector; k = 0 gives the scalar state of an empty register
    """
    if k < 0:
        raise PreconditionError(f"Phase ancilla size must be >= 0, got {k}")
    pair = _pair_amplitudes(theta)
    amps = np.ones(1)
    for _ in range(k):
        amps = np.kron(amps, pair)
    return StateVector(2 * k, amps)


def phase_ancilla_bits(k: int) -> str:
    """Classical bit string |01...01> the preparation circuit starts from."""
    return "01" * k


def phase_ancilla_circuit(theta: AngleLike, k: int) -> Circuit:
    """
    Preparation of Phi_k from |01>^(x)k: U_theta on every qubit.

    Args:
        theta: Basis angle
        k: Number of pairs, >= 1

    Returns:
        Circuit on 2k qubits
    """
    if k < 1:
        raise PreconditionError(f"Phase ancilla circuit needs k >= 1, got {k}")
    gate = STheta(as_angle(theta))
    return Circuit.from_ops(2 * k, [(gate, (q,)) for q in range(2 * k)])


def phase_ancilla_split(theta: AngleLike, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Split Phi_k into (Phi+, Phi-).

    Phi+ keeps the amplitudes where every pair is 01 or 10.
    """
    phi = phase_ancilla(theta, k).amplitudes
    idx = np.arange(phi.size)
    differ = np.ones(phi.size, dtype=bool)
    for i in range(k):
        shift = 2 * (k - 1 - i)
        pair = (idx >> shift) & 0b11
        differ &= (pair == 0b01) | (pair == 0b10)
    plus = np.where(differ, phi, 0.0)
    return plus, phi - plus


def build_sigma_z_tilde(theta: AngleLike, k: int) -> Circuit:
    """
    The sigma_z approximation on (control, b_1, b'_1, ..., b_k, b'_k).

    Args:
        theta: Basis angle the phase ancilla is built from
        k: Number of pairs, >= 1

    Returns:
        Circuit on 1 + 2k qubits
    """
    angle = as_angle(theta)
    if angle.is_multiple_of_half_pi():
        raise AngleDegeneracyError(
            f"theta = {angle} is a multiple of pi/2; the phase ancilla is a basis state",
            angle=angle.radians,
            excluded_step="pi/2",
        )
    if k < 1:
        raise PreconditionError(f"sigma_z approximation needs k >= 1, got {k}")
    return Circuit.from_ops(1 + 2 * k, [(SigmaZTilde(k), tuple(range(1 + 2 * k)))])
