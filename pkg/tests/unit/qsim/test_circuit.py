"""
Unit tests for gate kinds and the circuit IR.
"""

import sys
import os

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', '..'))

from src.qsim.angles import Angle
from src.qsim.circuit import Circuit, ControlledBlock, GateApp
from src.qsim.gates import (
    CNOT_GATE,
    H_GATE,
    TOFFOLI_GATE,
    X_GATE,
    Z_GATE,
    MarkNonZeroFlip,
    ReflectZero,
    SigmaZTilde,
    SReflect,
    STheta,
    SThetaInv,
)
from src.qsim.operators import circuit_unitary
from src.utils.exceptions import ArityMismatchError, QubitIndexError
from tests.fixtures.circuits import mixed_circuit


def _random_circuit(rng: np.random.Generator, n_qubits: int, length: int) -> Circuit:
    """Random gates from X, H, CNOT, Toffoli and basis rotations."""
    ops = []
    for _ in range(length):
        qubits = tuple(int(q) for q in rng.permutation(n_qubits))
        choice = int(rng.integers(5))
        if choice == 0:
            ops.append((X_GATE, qubits[:1]))
        elif choice == 1:
            ops.append((H_GATE, qubits[:1]))
        elif choice == 2:
            ops.append((CNOT_GATE, qubits[:2]))
        elif choice == 3:
            ops.append((TOFFOLI_GATE, qubits[:3]))
        else:
            ops.append((STheta(Angle(float(rng.uniform(0.0, 6.0)))), qubits[:1]))
    return Circuit.from_ops(n_qubits, ops)


class TestGateKinds:
    """Tests for gate kind matrices and permutations."""

    def test_s_theta_is_rotation(self):
        """STheta is [[c, -s], [s, c]] and SThetaInv is its transpose."""
        theta = Angle(0.4)
        m = STheta(theta).matrix()
        np.testing.assert_allclose(m, [[np.cos(0.4), -np.sin(0.4)], [np.sin(0.4), np.cos(0.4)]])
        np.testing.assert_allclose(SThetaInv(theta).matrix(), m.T)
        assert STheta(theta).inverse() == SThetaInv(theta)

    def test_reflection_is_involution(self):
        """SReflect squares to the identity."""
        m = SReflect(Angle(0.9)).matrix()
        np.testing.assert_allclose(m @ m, np.eye(2), atol=1e-15)

    def test_reflect_zero_diagonal(self):
        """ReflectZero flips |0...0>; the negated form flips everything else."""
        np.testing.assert_array_equal(ReflectZero(2).diagonal(), [-1, 1, 1, 1])
        np.testing.assert_array_equal(ReflectZero(2, negated=True).diagonal(), [1, -1, -1, -1])

    def test_mark_non_zero_flip_table(self):
        """The target flips iff the register is non-zero, for all 16 inputs at m = 3."""
        perm = MarkNonZeroFlip(3).permutation()
        for idx in range(16):
            register, target = idx >> 1, idx & 1
            expected_target = target ^ (1 if register else 0)
            assert perm[idx] == (register << 1) | expected_target

    def test_sigma_z_tilde_flips_first_equal_pair(self):
        """With the control set, the first pair with equal bits is flipped."""
        perm = SigmaZTilde(2).permutation()
        # control=1, pairs (0,1) and (1,1): the second pair is the first equal one
        assert perm[0b10111] == 0b10100
        # control=1, pairs (0,0),(1,1): the first pair flips
        assert perm[0b10011] == 0b11111
        # control=0: nothing happens
        assert perm[0b00011] == 0b00011
        # no equal pair: nothing happens
        assert perm[0b10110] == 0b10110

    def test_sigma_z_tilde_is_involution(self):
        """Applying the permutation twice is the identity."""
        perm = SigmaZTilde(3).permutation()
        np.testing.assert_array_equal(perm[perm], np.arange(perm.size))


class TestCircuit:
    """Tests for Circuit construction and transforms."""

    def test_validation_arity(self):
        """Arity mismatches are rejected."""
        with pytest.raises(ArityMismatchError):
            Circuit.from_ops(3, [(TOFFOLI_GATE, (0, 1))])

    def test_validation_range_and_duplicates(self):
        """Out-of-range and repeated qubits are rejected."""
        with pytest.raises(QubitIndexError):
            Circuit.from_ops(2, [(CNOT_GATE, (0, 2))])
        with pytest.raises(QubitIndexError):
            Circuit.from_ops(2, [(CNOT_GATE, (1, 1))])
        with pytest.raises(QubitIndexError):
            Circuit(0)

    def test_inverse(self):
        """Inverse reverses order and inverts each gate."""
        circuit = mixed_circuit(0.3)
        inverse = circuit.inverse()
        assert len(inverse) == len(circuit)
        assert inverse.gates[0].kind == circuit.gates[-1].kind.inverse()
        assert isinstance(inverse.gates[-1].kind, SThetaInv)

    def test_concatenation(self):
        """+ composes circuits on the same register."""
        a = Circuit.from_ops(2, [(X_GATE, (0,))])
        b = Circuit.from_ops(2, [(Z_GATE, (1,))])
        assert [app.kind.name for app in a + b] == ["x", "z"]
        with pytest.raises(QubitIndexError):
            a + Circuit.from_ops(3, [])

    @pytest.mark.parametrize("seed", range(8))
    def test_concatenation_composes_unitaries(self, seed):
        """The unitary of c1 + c2 is U(c2) U(c1) on random three-qubit circuits."""
        rng = np.random.default_rng(seed)
        c1, c2 = _random_circuit(rng, 3, 12), _random_circuit(rng, 3, 12)
        np.testing.assert_allclose(
            circuit_unitary(c1 + c2).entries,
            circuit_unitary(c2).entries @ circuit_unitary(c1).entries,
            atol=1e-12,
        )

    def test_remap_and_repeat(self):
        """remap moves qubits into a larger register; repeated tiles the gates."""
        small = Circuit.from_ops(2, [(CNOT_GATE, (0, 1))])
        big = small.remap([3, 1], 4)
        assert big.gates == (GateApp(CNOT_GATE, (3, 1)),)
        assert len(small.repeated(3)) == 3

    def test_gate_counts_and_kinds(self):
        """gate_counts counts top-level kinds; kinds() looks inside blocks."""
        inner = Circuit.from_ops(1, [(H_GATE, (0,))])
        circuit = Circuit.from_ops(2, [(X_GATE, (0,)), (X_GATE, (1,)), (ControlledBlock(inner), (0, 1))])
        assert circuit.gate_counts() == {"controlled_block": 1, "x": 2}
        assert circuit.kinds() == {"x", "controlled_block", "h"}

    def test_controlled_block_inverse(self):
        """A controlled block inverts its inner circuit."""
        inner = Circuit.from_ops(1, [(STheta(Angle(0.2)), (0,))])
        block = ControlledBlock(inner)
        assert block.arity == 2
        assert isinstance(block.inverse().inner.gates[0].kind, SThetaInv)
