"""
Unit tests for the approximate W_{alpha/2} preparation.
"""

import sys
import os
import math

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', '..'))

from src.qsim.angles import Angle
from src.qsim.operators import circuit_unitary
from src.qsim.spectrum import rotation_spectrum
from src.qsim.statevector import basis_state, simulate
from src.synthesis.grover import (
    build_T_theta,
    build_W_half_alpha,
    grover_iteration,
    grover_plane_basis,
    oracle_W_half_alpha,
    plane_layer,
    preparation_error,
    t_layer,
    t_theta_column,
)
from src.synthesis.params import gamma_for
from src.utils.exceptions import PreconditionError


class TestTTheta:
    """Tests for T_theta."""

    def test_column(self):
        """T_theta |00> = (c^2, s^2, -cs, cs)."""
        theta = 0.8
        c, s = math.cos(theta), math.sin(theta)
        out = simulate(build_T_theta(theta), basis_state("00")).amplitudes
        np.testing.assert_allclose(out, [c * c, s * s, -c * s, c * s], atol=1e-15)

    def test_involution(self):
        """T_theta squares to the identity."""
        op = circuit_unitary(build_T_theta(1.1) + build_T_theta(1.1)).entries
        np.testing.assert_allclose(op, np.eye(4), atol=1e-14)

    def test_layer_column(self):
        """The layer maps |0^> to |1~> with <0^|1~> = cos^(2k) theta."""
        k = 2
        out = simulate(t_layer("pi/6", k), basis_state("0" * 4)).amplitudes
        np.testing.assert_allclose(out, t_theta_column("pi/6", k), atol=1e-14)
        assert out[0] == pytest.approx(9 / 16)

    def test_layer_size(self):
        """k must be positive."""
        with pytest.raises(PreconditionError):
            t_layer(1.0, 0)


class TestGroverIteration:
    """Tests for one Grover step."""

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_rotation_by_two_gamma(self, k):
        """One iteration rotates the invariant plane by 2 gamma."""
        theta = "pi/6"
        gamma = gamma_for(theta, k)
        op = circuit_unitary(grover_iteration(theta, k))
        summary = rotation_spectrum(op)
        assert summary.angles == pytest.approx([2 * gamma], abs=1e-9)

        zero_hat, one_hat = grover_plane_basis(theta, k)
        plane = np.column_stack([zero_hat, one_hat])
        image = op.entries @ plane
        np.testing.assert_allclose(plane @ (plane.T @ image), image, atol=1e-10)
        restricted = plane.T @ image
        assert math.atan2(abs(restricted[1, 0]), restricted[0, 0]) == pytest.approx(2 * gamma, abs=1e-9)

    def test_plane_basis(self):
        """The plane basis is orthonormal."""
        zero_hat, one_hat = grover_plane_basis(1.0, 2)
        assert zero_hat @ one_hat == pytest.approx(0.0, abs=1e-15)
        assert np.linalg.norm(one_hat) == pytest.approx(1.0)


class TestWHalfAlpha:
    """Tests for the approximate preparation."""

    @pytest.mark.parametrize(
        "alpha",
        ["pi/3", 0.7, 2.0, Angle.from_pi_fraction(19, 10)],
    )
    @pytest.mark.parametrize("theta, k", [("pi/6", 4), ("pi/6", 5), (1.0, 2), (1.0, 3)])
    def test_preparation_bound(self, alpha, theta, k):
        """||W |0...0> - |phi_{alpha/2}>|0...0>|| <= 2 gamma."""
        circuit = build_W_half_alpha(alpha, theta, k)
        assert circuit.n_qubits == 1 + 2 * k
        assert preparation_error(circuit, alpha) <= 2 * gamma_for(theta, k) + 1e-10

    def test_pi_over_six_k4(self):
        """theta = pi/6, k = 4, alpha = pi/3 within 2 arcsin(cos^8(pi/6))."""
        error = preparation_error(build_W_half_alpha("pi/3", "pi/6", 4), "pi/3")
        assert error <= 2 * math.asin(math.cos(math.pi / 6) ** 8) + 1e-10
        assert 2 * math.asin(math.cos(math.pi / 6) ** 8) == pytest.approx(0.6439, abs=1e-4)

    def test_oracle_is_exact(self):
        """The oracle preparation has no error."""
        assert preparation_error(oracle_W_half_alpha("pi/3", 2), "pi/3") < 1e-10

    def test_size(self):
        """k must be positive."""
        with pytest.raises(PreconditionError):
            build_W_half_alpha("pi/3", 1.0, 0)


class TestPlaneLayer:
    """Tests for the Grover register held in its plane."""

    @pytest.mark.parametrize("theta", ["pi/6", 1.0])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_matches_t_layer_on_plane(self, theta, k):
        """T^(x)k maps the plane to itself and acts there as the one-qubit plane layer."""
        layer = circuit_unitary(t_layer(theta, k)).entries
        zero_hat, one_hat = grover_plane_basis(theta, k)
        plane = np.column_stack([zero_hat, one_hat])
        image = layer @ plane
        np.testing.assert_allclose(plane @ (plane.T @ image), image, atol=1e-12)
        np.testing.assert_allclose(plane.T @ image, circuit_unitary(plane_layer(theta, k)).entries, atol=1e-12)

    @pytest.mark.parametrize("alpha", ["pi/3", 2.0, Angle.from_pi_fraction(19, 10)])
    @pytest.mark.parametrize("theta, k", [("pi/6", 3), (1.0, 2)])
    def test_plane_preparation_matches(self, alpha, theta, k):
        """W_(alpha/2) built in the plane has the same preparation error on two qubits."""
        plane = build_W_half_alpha(alpha, theta, k, plane=True)
        assert plane.n_qubits == 2
        dense = preparation_error(build_W_half_alpha(alpha, theta, k), alpha)
        assert preparation_error(plane, alpha) == pytest.approx(dense, abs=1e-12)

    def test_large_register(self):
        """k = 16 at theta = pi/6 still prepares within 2 gamma."""
        circuit = build_W_half_alpha("pi/3", "pi/6", 16, plane=True)
        assert preparation_error(circuit, "pi/3") <= 2 * gamma_for("pi/6", 16) + 1e-10

    def test_size(self):
        """k must be positive."""
        with pytest.raises(PreconditionError):
            plane_layer(1.0, 0)
