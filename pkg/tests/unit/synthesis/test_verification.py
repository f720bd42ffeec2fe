"""
Unit tests for the marginalized restricted error.
"""

import sys
import os

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', '..'))

from src.qsim.circuit import Circuit
from src.qsim.gates import CNOT_GATE, H_GATE, X_GATE, Z_GATE, SigmaZTilde
from src.qsim.operators import circuit_unitary, restricted_error
from src.qsim.statevector import basis_state
from src.synthesis.basis import BasisSpec
from src.synthesis.lowering import SigmaZSpec, lower_to_basis
from src.synthesis.params import count_sigma_z_uses, gamma_for, grover_count_for, sigma_z_bound
from src.synthesis.sigma_z import phase_ancilla
from src.synthesis.verification import PLANE_SYSTEM_QUBITS, marginal_restricted_error, plane_restricted_error
from src.synthesis.w_alpha import SigmaZApprox, approximate_sigma_z, build_W_alpha, target_operator, w_alpha_ancilla
from src.utils.exceptions import DimensionCapError, PreconditionError

THETA = 1.0


def _two_qubit() -> Circuit:
    return Circuit.from_ops(
        2,
        [(H_GATE, (0,)), (Z_GATE, (0,)), (CNOT_GATE, (0, 1)), (Z_GATE, (1,)), (H_GATE, (1,))],
    )


class TestMarginalRestrictedError:
    """marginal_restricted_error against the dense restricted error."""

    @pytest.mark.parametrize("policy, registers", [("shared", 1), ("fresh", 2)])
    def test_matches_dense(self, policy, registers):
        """Both policies agree with the full simulation."""
        k2 = 2
        exact = _two_qubit()
        approx = approximate_sigma_z(exact, THETA, k2, policy)
        target = circuit_unitary(exact)
        phi = phase_ancilla(THETA, k2)
        ancilla = phi
        for _ in range(registers - 1):
            ancilla = ancilla.kron(phi)
        dense = restricted_error(target, approx, ancilla)
        marginal = marginal_restricted_error(target, approx, 2, THETA)
        assert marginal == pytest.approx(dense, abs=1e-10)
        assert dense > 1e-6

    @pytest.mark.parametrize("policy", ["shared", "fresh"])
    def test_w_alpha(self, policy):
        """The sigma_z-level W_alpha with system ancillae agrees with the dense error."""
        k, k2 = 1, 1
        mode = SigmaZApprox(k2=k2, policy=policy)
        circuit = build_W_alpha("pi/3", THETA, k, sigma_z_mode=mode)
        n_system = 1 + 2 * k + 1
        registers = (circuit.n_qubits - n_system) // (2 * k2)
        assert registers == (1 if policy == "shared" else circuit.gate_counts()["sigma_z_tilde"])
        dense = restricted_error(target_operator("pi/3"), circuit, w_alpha_ancilla(k, THETA, mode, registers))
        marginal = marginal_restricted_error(target_operator("pi/3"), circuit, n_system, THETA)
        assert marginal == pytest.approx(dense, abs=1e-10)

    def test_no_phase_registers(self):
        """Without SigmaZTilde the result is the plain restricted error."""
        circuit = Circuit.from_ops(2, [(H_GATE, (0,)), (CNOT_GATE, (0, 1))])
        target = circuit_unitary(Circuit.from_ops(1, [(H_GATE, (0,))]))
        dense = restricted_error(target, circuit, basis_state("0"))
        assert marginal_restricted_error(target, circuit, 2, THETA) == pytest.approx(dense, abs=1e-12)

    def test_cap(self):
        """n_system above the cap raises DimensionCapError."""
        approx = approximate_sigma_z(_two_qubit(), THETA, 1)
        with pytest.raises(DimensionCapError):
            marginal_restricted_error(circuit_unitary(_two_qubit()), approx, 2, THETA, max_qubits=1)

    def test_overlapping_registers(self):
        """Registers that are neither shared nor disjoint are refused."""
        circuit = Circuit.from_ops(5, [(SigmaZTilde(1), (0, 2, 3)), (SigmaZTilde(1), (1, 3, 4))])
        target = circuit_unitary(Circuit.from_ops(2, [(Z_GATE, (0,)), (Z_GATE, (1,))]))
        with pytest.raises(PreconditionError):
            marginal_restricted_error(target, circuit, 2, THETA)

    def test_other_gate_on_phase_register(self):
        """Only SigmaZTilde may touch a phase register."""
        circuit = Circuit.from_ops(3, [(SigmaZTilde(1), (0, 1, 2)), (X_GATE, (2,))])
        target = circuit_unitary(Circuit.from_ops(1, [(Z_GATE, (0,))]))
        with pytest.raises(PreconditionError):
            marginal_restricted_error(target, circuit, 1, THETA)


class TestLoweredAgreement:
    """The sigma_z-level error is the error of the lowered {Toffoli, S} circuit."""

    @pytest.mark.parametrize("policy", ["shared", "fresh"])
    def test_lowered_w_alpha(self, policy):
        """Lowering W_alpha at k1 = k2 = 1 keeps the marginalized restricted error."""
        lowered = lower_to_basis(build_W_alpha("pi/3", THETA, 1), BasisSpec.rotation(THETA), SigmaZSpec(1, policy))
        assert lowered.body.n_qubits <= 24
        ancilla = basis_state("00").kron(lowered.ancilla_state())
        dense = restricted_error(target_operator("pi/3"), lowered.body, ancilla)
        sigma_level = build_W_alpha("pi/3", THETA, 1, SigmaZApprox(k2=1, policy=policy))
        marginal = marginal_restricted_error(target_operator("pi/3"), sigma_level, 4, THETA)
        assert marginal == pytest.approx(dense, abs=1e-10)
        assert dense > 1e-6


class TestPlaneRestrictedError:
    """plane_restricted_error against the dense marginalized error."""

    @pytest.mark.parametrize("policy", ["shared", "fresh"])
    @pytest.mark.parametrize("alpha", ["pi/3", 2.0, 5.5])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_matches_dense(self, policy, alpha, k):
        """Holding the Grover register in its plane does not change the error."""
        mode = SigmaZApprox(k2=2, policy=policy)
        circuit = build_W_alpha(alpha, THETA, k, sigma_z_mode=mode)
        dense = marginal_restricted_error(target_operator(alpha), circuit, 2 + 2 * k, THETA)
        assert plane_restricted_error(alpha, THETA, k, mode) == pytest.approx(dense, abs=1e-10)

    def test_plane_circuit_layout(self):
        """The plane build has data, plane and work qubits ahead of the phase register."""
        mode = SigmaZApprox(k2=3)
        circuit = build_W_alpha("pi/3", "pi/6", 16, sigma_z_mode=mode, plane=True)
        assert circuit.n_qubits == PLANE_SYSTEM_QUBITS + 2 * 3

    @pytest.mark.parametrize("policy", ["shared", "fresh"])
    def test_large_register_within_bound(self, policy):
        """theta = pi/6 with k1 = 16 stays within 4 gamma plus the sigma_z term."""
        k1, k2 = 16, 62
        error = plane_restricted_error("pi/3", "pi/6", k1, SigmaZApprox(k2=k2, policy=policy))
        gamma = gamma_for("pi/6", k1)
        uses = 1 if policy == "shared" else count_sigma_z_uses(*grover_count_for("pi/3", gamma))
        assert error <= 4 * gamma + uses * sigma_z_bound("pi/6", k2) + 1e-10
        assert error <= 0.1
