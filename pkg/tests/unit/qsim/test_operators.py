"""
Unit tests for dense operators, restricted error and rotation spectra.
"""

import sys
import os
import math

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', '..'))

from src.qsim.angles import Angle
from src.qsim.circuit import Circuit
from src.qsim.gates import CNOT_GATE, H_GATE, TOFFOLI_GATE, STheta, Z_GATE
from src.qsim.operators import RealOperator, circuit_unitary, restricted_error
from src.qsim.spectrum import rotation_spectrum
from src.qsim.statevector import StateVector, basis_state
from src.utils.exceptions import DimensionCapError, DimensionMismatchError, NonOrthogonalError
from tests.fixtures.circuits import mixed_circuit, random_orthogonal, rotation


class TestRealOperator:
    """Tests for RealOperator."""

    def test_rejects_non_power_of_two(self):
        """Dimensions must be powers of two."""
        with pytest.raises(DimensionMismatchError):
            RealOperator(np.eye(3))

    def test_circuit_unitary_is_orthogonal(self):
        """Circuits over real gates give orthogonal operators."""
        op = circuit_unitary(mixed_circuit())
        assert op.is_orthogonal()
        assert op.n_qubits == 3

    def test_circuit_unitary_columns(self):
        """Column j is the image of basis state j."""
        op = circuit_unitary(Circuit.from_ops(2, [(CNOT_GATE, (0, 1))]))
        np.testing.assert_array_equal(op.entries[:, 2], [0, 0, 0, 1])

    def test_cap_enforced(self):
        """Dense operators above the cap are refused."""
        with pytest.raises(DimensionCapError):
            circuit_unitary(Circuit.from_ops(4, []), max_qubits=3)

    def test_cap_from_environment(self, monkeypatch):
        """GATESMITH_MAX_QUBITS sets the default cap."""
        monkeypatch.setenv("GATESMITH_MAX_QUBITS", "2")
        with pytest.raises(DimensionCapError):
            circuit_unitary(Circuit.from_ops(3, []))


class TestRestrictedError:
    """Tests for restricted_error."""

    def test_exact_circuit_has_zero_error(self):
        """A circuit implementing the target exactly has error 0."""
        theta = 0.8
        circuit = Circuit.from_ops(2, [(STheta(Angle(theta)), (0,))])
        error = restricted_error(RealOperator(rotation(theta)), circuit, basis_state("1"))
        assert error == pytest.approx(0.0, abs=1e-14)

    def test_matches_brute_force_net(self):
        """The singular-value formula matches a dense net of unit inputs for r = 1."""
        target = RealOperator(rotation(0.3))
        circuit = Circuit.from_ops(
            2, [(H_GATE, (1,)), (CNOT_GATE, (1, 0)), (STheta(Angle(0.5)), (0,)), (H_GATE, (1,))]
        )
        ancilla = basis_state("0")
        error = restricted_error(target, circuit, ancilla)
        op = circuit_unitary(circuit).entries
        best = 0.0
        for phi in np.linspace(0.0, 2 * math.pi, 10_000, endpoint=False):
            xi = np.array([math.cos(phi), math.sin(phi)])
            diff = op @ np.kron(xi, ancilla.amplitudes) - np.kron(target.entries @ xi, ancilla.amplitudes)
            best = max(best, float(np.linalg.norm(diff)))
        assert error == pytest.approx(best, abs=1e-6)

    def test_z_versus_identity(self):
        """Z against the identity has error 2."""
        circuit = Circuit.from_ops(1, [(Z_GATE, (0,))])
        error = restricted_error(RealOperator.identity(1), circuit, StateVector(0, np.ones(1)))
        assert error == pytest.approx(2.0)

    def test_dimension_mismatch(self):
        """Target plus ancilla must cover the circuit."""
        with pytest.raises(DimensionMismatchError):
            restricted_error(RealOperator.identity(1), Circuit.from_ops(3, []), basis_state("0"))


class TestRotationSpectrum:
    """Tests for rotation_spectrum."""

    def test_theorem4_structure(self):
        """(H^3 . Toffoli)^2 has six +1 eigenvalues and angle pi - arccos(3/4)."""
        step = Circuit.from_ops(
            3, [(TOFFOLI_GATE, (0, 1, 2)), (H_GATE, (0,)), (H_GATE, (1,)), (H_GATE, (2,))]
        )
        summary = rotation_spectrum(circuit_unitary(step + step))
        assert summary.plus_one_multiplicity == 6
        assert summary.minus_one_multiplicity == 0
        assert summary.angles == pytest.approx([math.pi - math.acos(0.75)], abs=1e-10)

    def test_reconstruct(self):
        """The decomposition reassembles a random orthogonal matrix."""
        op = random_orthogonal(8, seed=3)
        summary = rotation_spectrum(op)
        np.testing.assert_allclose(summary.reconstruct(), op.entries, atol=1e-10)
        assert summary.plus_one_multiplicity + summary.minus_one_multiplicity + 2 * len(summary.angles) == 8

    def test_grouped_angles(self):
        """Equal rotation angles are merged with their multiplicity."""
        block = rotation(0.4)
        op = RealOperator(np.kron(np.eye(2), block))
        assert rotation_spectrum(op).grouped_angles() == [(pytest.approx(0.4), 2)]

    def test_rounding_on_schur_subdiagonal(self, mocker):
        """A subdiagonal at rounding level separates real eigenvalues instead of forming a plane."""
        t = np.array([[1.0, 0.0], [1e-17, -1.0]])
        mocker.patch("src.qsim.spectrum.scipy.linalg.schur", return_value=(t, np.eye(2)))
        summary = rotation_spectrum(RealOperator(np.diag([1.0, -1.0])))
        assert summary.plus_one_multiplicity == 1
        assert summary.minus_one_multiplicity == 1
        assert summary.angles == []

    def test_mixed_multiplicities(self):
        """Conjugated +1, -1 and rotation blocks are recovered with their multiplicities."""
        core = np.zeros((6, 6))
        core[:4, :4] = np.diag([1.0, 1.0, -1.0, -1.0])
        core[4:, 4:] = rotation(0.7)
        basis = random_orthogonal(6, seed=11).entries
        summary = rotation_spectrum(RealOperator(basis @ core @ basis.T))
        assert summary.plus_one_multiplicity == 2
        assert summary.minus_one_multiplicity == 2
        assert summary.angles == pytest.approx([0.7], abs=1e-10)

    def test_non_orthogonal_rejected(self):
        """Non-orthogonal inputs are refused."""
        with pytest.raises(NonOrthogonalError):
            rotation_spectrum(RealOperator(2.0 * np.eye(2)))
