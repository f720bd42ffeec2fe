"""
Lowering of the circuit IR to the bare basis {Toffoli, S}.

Added qubits are G-ancillae: each starts from a classical bit (|1> for the two
"ones" that turn Toffoli into CNOT and X, |0> for work bits, |01...01> for a
phase register) and phase registers are then prepared by U_theta on every
qubit. Rules:

- CNOT(c, t)           -> Toffoli(one, c, t)
- X(t)                 -> Toffoli(one, one', t)
- STheta               -> STheta, or S followed by X for a reflection basis
- SThetaInv            -> X . STheta . X
- Z(q)                 -> SigmaZTilde on a phase register
- SigmaZTilde(k)       -> Toffoli priority chain with k - 1 clean flag bits, one
                          per pair boundary rather than a logarithmic count
- MarkNonZeroFlip(m)   -> X-conjugated multi-controlled X (V-chain) plus X
- ReflectZero(m)       -> MarkNonZeroFlip onto a work bit, Z there, uncompute
- ControlledBlock      -> control added to every flip gate; rotations stay
                          uncontrolled when their net angle per qubit is zero
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.qsim.circuit import Circuit, ControlledBlock, GateApp
from src.qsim.gates import (
    CNOT,
    TOFFOLI_GATE,
    X,
    GateKind,
    MarkNonZeroFlip,
    ReflectZero,
    SigmaZTilde,
    SReflect,
    STheta,
    SThetaInv,
    Toffoli,
    Z,
)
from src.qsim.statevector import StateVector, basis_state, simulate
from src.synthesis.basis import BasisSpec
from src.synthesis.params import AncillaPolicy
from src.utils.config import TOLERANCES
from src.utils.exceptions import AncillaBudgetError, LoweringError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SigmaZSpec:
    """How Z gates are approximated during lowering."""
    k2: int
    policy: AncillaPolicy = "shared"


class QubitAllocator:
    """
    Hands out ancilla qubits after the circuit's own qubits.

    Work bits are borrowed clean and must be returned clean; released bits are
    reused before new ones are allocated.
    """

    def __init__(self, n_qubits: int, max_ancillas: Optional[int] = None):
        self.n_data = n_qubits
        self.n_qubits = n_qubits
        self.max_ancillas = max_ancillas
        self.initial_bits: Dict[int, int] = {}
        self.phase_registers: List[Tuple[int, ...]] = []
        self._ones: Optional[Tuple[int, int]] = None
        self._free: List[int] = []
        self._shared_register: Optional[Tuple[int, ...]] = None

    def _new(self, bit: int) -> int:
        if self.max_ancillas is not None and self.n_qubits - self.n_data >= self.max_ancillas:
            raise AncillaBudgetError(
                f"Lowering needs more than {self.max_ancillas} ancillae",
                context={"max_ancillas": self.max_ancillas},
            )
        q = self.n_qubits
        self.n_qubits += 1
        self.initial_bits[q] = bit
        return q

    @property
    def ancilla_count(self) -> int:
        return self.n_qubits - self.n_data

    def ones(self) -> Tuple[int, int]:
        if self._ones is None:
            self._ones = (self._new(1), self._new(1))
        return self._ones

    def borrow(self, count: int) -> List[int]:
        taken = [self._free.pop() for _ in range(min(count, len(self._free)))]
        taken.extend(self._new(0) for _ in range(count - len(taken)))
        return taken

    def release(self, qubits: Iterable[int]) -> None:
        self._free.extend(sorted(qubits, reverse=True))

    def phase_register(self, k: int, policy: AncillaPolicy) -> Tuple[int, ...]:
        if policy == "shared" and self._shared_register is not None:
            return self._shared_register
        register = tuple(self._new(bit) for bit in [0, 1] * k)
        self.phase_registers.append(register)
        if policy == "shared":
            self._shared_register = register
        return register


@dataclass(frozen=True)
class LoweredCircuit:
    """
    A circuit over {Toffoli, S} with its G-ancilla description.

    Attributes:
        body: Lowered circuit; the first n_data qubits are the source circuit's
        n_data: Number of source qubits
        ancilla_bits: Initial bit of each added qubit, in qubit order
        preparation: Circuit on the added qubits mapping |ancilla_bits> to the ancilla state
    """
    body: Circuit
    n_data: int
    ancilla_bits: str
    preparation: Circuit
    phase_registers: Tuple[Tuple[int, ...], ...] = field(default=())

    @property
    def ancilla_count(self) -> int:
        return len(self.ancilla_bits)

    def gate_counts(self) -> Dict[str, int]:
        return self.body.gate_counts()

    def ancilla_state(self) -> StateVector:
        """A|b>, the state of the added qubits."""
        if not self.ancilla_bits:
            return StateVector(0, [1.0])
        return simulate(self.preparation, basis_state(self.ancilla_bits))


class BasisLowering:
    """
    Emits basis gates for IR gates, allocating ancillae on the way.

    With count_only=True gates are tallied but not kept, for circuits too large
    to materialize.
    """

    def __init__(
        self,
        basis: BasisSpec,
        sigma_z: Optional[SigmaZSpec],
        allocator: QubitAllocator,
        count_only: bool = False,
    ):
        self.basis = basis
        self.sigma_z = sigma_z
        self.alloc = allocator
        self.count_only = count_only
        self.gates: List[GateApp] = []
        self.counts: Counter = Counter()
        self._s_gate: GateKind = (
            SReflect(basis.reflection_beta) if basis.s_is_reflection else STheta(basis.s_theta)
        )

    # -- primitive emission ---------------------------------------------------

    def _emit(self, kind: GateKind, qubits: Sequence[int]) -> None:
        self.counts[kind.name] += 1
        if not self.count_only:
            self.gates.append(GateApp(kind, tuple(qubits)))

    def toffoli(self, a: int, b: int, t: int) -> None:
        self._emit(TOFFOLI_GATE, (a, b, t))

    def cnot(self, c: int, t: int) -> None:
        one, _ = self.alloc.ones()
        self.toffoli(one, c, t)

    def x(self, t: int) -> None:
        one, other = self.alloc.ones()
        self.toffoli(one, other, t)

    def s_theta(self, q: int) -> None:
        self._emit(self._s_gate, (q,))
        if self.basis.s_is_reflection:
            self.x(q)

    def s_theta_inv(self, q: int) -> None:
        self.x(q)
        self.s_theta(q)
        self.x(q)

    def mcx(self, controls: Sequence[int], target: int) -> None:
        """Multi-controlled X with a V-chain of len(controls) - 2 clean work bits."""
        m = len(controls)
        if m == 0:
            self.x(target)
        elif m == 1:
            self.cnot(controls[0], target)
        elif m == 2:
            self.toffoli(controls[0], controls[1], target)
        else:
            work = self.alloc.borrow(m - 2)
            chain = [(controls[0], controls[1], work[0])]
            chain += [(controls[j], work[j - 2], work[j - 1]) for j in range(2, m - 1)]
            for a, b, t in chain:
                self.toffoli(a, b, t)
            self.toffoli(controls[-1], work[-1], target)
            for a, b, t in reversed(chain):
                self.toffoli(a, b, t)
            self.alloc.release(work)

    # -- composite rules ------------------------------------------------------

    def mark_non_zero_flip(self, register: Sequence[int], target: int) -> None:
        for q in register:
            self.x(q)
        self.mcx(register, target)
        self.x(target)
        for q in register:
            self.x(q)

    def sigma_z_tilde(self, qubits: Sequence[int]) -> None:
        control = qubits[0]
        firsts = list(qubits[1::2])
        seconds = list(qubits[2::2])
        k = len(firsts)
        for b, b2 in zip(firsts, seconds):
            self.cnot(b, b2)
        # seconds now hold d_i = b_i xor b'_i
        flags = self.alloc.borrow(k - 1)
        prev = control
        prevs = []
        for i in range(k):
            b, d = firsts[i], seconds[i]
            self.x(d)
            self.toffoli(prev, d, b)
            self.x(d)
            if i < k - 1:
                self.toffoli(prev, d, flags[i])
                prevs.append(prev)
                prev = flags[i]
        for i in reversed(range(k - 1)):
            self.toffoli(prevs[i], seconds[i], flags[i])
        self.alloc.release(flags)
        for b, b2 in zip(firsts, seconds):
            self.cnot(b, b2)

    def z(self, q: int) -> None:
        if self.sigma_z is None:
            raise LoweringError("Z needs a sigma_z approximation (k2, policy) to lower")
        register = self.alloc.phase_register(self.sigma_z.k2, self.sigma_z.policy)
        self.sigma_z_tilde((q, *register))

    def reflect_zero(self, kind: ReflectZero, qubits: Sequence[int]) -> None:
        (work,) = self.alloc.borrow(1)
        self.mark_non_zero_flip(qubits, work)
        if not kind.negated:
            self.x(work)
        self.z(work)
        if not kind.negated:
            self.x(work)
        self.mark_non_zero_flip(qubits, work)
        self.alloc.release([work])

    def controlled(self, block: ControlledBlock, qubits: Sequence[int]) -> None:
        control, targets = qubits[0], qubits[1:]
        net: Dict[int, float] = {}
        for app in block.inner:
            if isinstance(app.kind, (STheta, SThetaInv)):
                sign = 1.0 if isinstance(app.kind, STheta) else -1.0
                q = app.qubits[0]
                net[q] = net.get(q, 0.0) + sign * app.kind.theta.radians
        for q, angle in net.items():
            r = math.remainder(angle, 2.0 * math.pi)
            if abs(r) > TOLERANCES.angle:
                raise LoweringError(
                    f"Controlled block rotates inner qubit {q} by a net {angle}; only flips can be controlled",
                    context={"qubit": q, "net_angle": angle},
                )
        for app in block.inner:
            kind = app.kind
            mapped = [targets[q] for q in app.qubits]
            if isinstance(kind, (STheta, SThetaInv)):
                self.apply(kind, mapped)
            elif isinstance(kind, X):
                self.cnot(control, mapped[0])
            elif isinstance(kind, CNOT):
                self.toffoli(control, mapped[0], mapped[1])
            elif isinstance(kind, Toffoli):
                self.mcx([control, mapped[0], mapped[1]], mapped[2])
            else:
                raise LoweringError(f"Cannot add a control to {kind}", context={"kind": kind.name})

    # -- dispatch -------------------------------------------------------------

    def apply(self, kind: GateKind, qubits: Sequence[int]) -> None:
        if isinstance(kind, Toffoli):
            self.toffoli(*qubits)
        elif isinstance(kind, CNOT):
            self.cnot(*qubits)
        elif isinstance(kind, X):
            self.x(qubits[0])
        elif isinstance(kind, STheta):
            self._check_angle(kind)
            self.s_theta(qubits[0])
        elif isinstance(kind, SThetaInv):
            self._check_angle(kind)
            self.s_theta_inv(qubits[0])
        elif isinstance(kind, SReflect) and self.basis.s_is_reflection and kind == self._s_gate:
            self._emit(kind, qubits)
        elif isinstance(kind, Z):
            self.z(qubits[0])
        elif isinstance(kind, SigmaZTilde):
            self.sigma_z_tilde(qubits)
        elif isinstance(kind, MarkNonZeroFlip):
            self.mark_non_zero_flip(qubits[:-1], qubits[-1])
        elif isinstance(kind, ReflectZero):
            self.reflect_zero(kind, qubits)
        elif isinstance(kind, ControlledBlock):
            self.controlled(kind, qubits)
        else:
            raise LoweringError(f"No lowering rule for {kind}", context={"kind": kind.name})

    def _check_angle(self, kind: GateKind) -> None:
        if abs(math.remainder(kind.theta.radians - self.basis.theta, 2.0 * math.pi)) > TOLERANCES.angle:
            raise LoweringError(
                f"{kind} does not use the basis angle {self.basis.s_theta}",
                context={"theta": kind.theta.radians, "basis_theta": self.basis.theta},
            )

    def lower(self, circuit: Circuit) -> None:
        for app in circuit:
            self.apply(app.kind, app.qubits)


def lower_to_basis(
    circuit: Circuit,
    basis: BasisSpec,
    sigma_z: Optional[SigmaZSpec] = None,
    max_ancillas: Optional[int] = None,
) -> LoweredCircuit:
    """
    Lower a circuit to Toffoli and S gates on G-ancillae.

    Args:
        circuit: Source circuit
        basis: The basis gate S
        sigma_z: Phase-ancilla size and policy used for Z gates
        max_ancillas: Budget for added qubits

    Returns:
        LoweredCircuit
    """
    if sigma_z is not None and sigma_z.k2 < 1:
        raise PreconditionError(f"k2 must be >= 1, got {sigma_z.k2}")
    alloc = QubitAllocator(circuit.n_qubits, max_ancillas)
    body = BasisLowering(basis, sigma_z, alloc)
    body.lower(circuit)

    # U_theta on every phase qubit, lowered with the same ones
    prep = BasisLowering(basis, None, alloc)
    for register in alloc.phase_registers:
        for q in register:
            prep.s_theta(q)

    n = alloc.n_qubits
    added = range(alloc.n_data, n)
    shift = {q: q - alloc.n_data for q in added}
    preparation = Circuit(
        max(n - alloc.n_data, 1),
        tuple(GateApp(app.kind, tuple(shift[q] for q in app.qubits)) for app in prep.gates),
    )
    lowered = LoweredCircuit(
        body=Circuit(n, tuple(body.gates)),
        n_data=alloc.n_data,
        ancilla_bits="".join(str(alloc.initial_bits[q]) for q in added),
        preparation=preparation,
        phase_registers=tuple(alloc.phase_registers),
    )
    logger.debug(
        f"Lowered {len(circuit)} gates to {len(lowered.body)} on {n} qubits "
        f"({lowered.ancilla_count} ancillae): {lowered.gate_counts()}"
    )
    return lowered
