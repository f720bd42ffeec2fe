"""
Circuits: ordered gate applications over n qubits.

A Circuit is immutable; builders assemble lists of GateApp and construct the
Circuit once. ControlledBlock wraps an inner Circuit and applies it iff its
control qubit is |1>.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any, ClassVar, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from src.qsim.gates import GateKind
from src.utils.exceptions import ArityMismatchError, QubitIndexError


def validate_application(kind: GateKind, qubits: Sequence[int], n_qubits: int) -> Tuple[int, ...]:
    """
    Check that a gate can be applied to the given qubits of an n-qubit register.

    Args:
        kind: Gate kind
        qubits: Ordered operand list
        n_qubits: Register size

    Returns:
        The operands as a tuple of ints
    """
    operands = tuple(int(q) for q in qubits)
    if len(operands) != kind.arity:
        raise ArityMismatchError(
            f"{kind.name} expects {kind.arity} qubits, got {len(operands)}",
            context={"kind": kind.name, "qubits": list(operands)},
        )
    for q in operands:
        if q < 0 or q >= n_qubits:
            raise QubitIndexError(
                f"Qubit index {q} out of range for {n_qubits} qubits",
                context={"kind": kind.name, "qubits": list(operands), "n_qubits": n_qubits},
            )
    if len(set(operands)) != len(operands):
        raise QubitIndexError(
            f"Duplicate qubit indices in {kind.name} application: {list(operands)}",
            context={"kind": kind.name, "qubits": list(operands)},
        )
    return operands


@dataclass(frozen=True)
class GateApp:
    """A gate kind applied to an ordered list of qubits."""
    kind: GateKind
    qubits: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}{list(self.qubits)}"


@dataclass(frozen=True)
class Circuit:
    """
    An ordered list of gate applications over n_qubits.

    Gates are applied in list order (the first gate acts first).
    """
    n_qubits: int
    gates: Tuple[GateApp, ...] = ()

    def __post_init__(self):
        if self.n_qubits < 1:
            raise QubitIndexError(f"A circuit needs at least one qubit, got {self.n_qubits}")
        checked = []
        for app in self.gates:
            if not isinstance(app, GateApp):
                app = GateApp(*app)
            checked.append(GateApp(app.kind, validate_application(app.kind, app.qubits, self.n_qubits)))
        object.__setattr__(self, "gates", tuple(checked))

    @classmethod
    def from_ops(cls, n_qubits: int, ops: Iterable[Tuple[GateKind, Sequence[int]]]) -> "Circuit":
        """Build a circuit from (kind, qubits) pairs."""
        return cls(n_qubits, tuple(GateApp(kind, tuple(qubits)) for kind, qubits in ops))

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[GateApp]:
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        """Sequential composition: self first, then other."""
        if other.n_qubits != self.n_qubits:
            raise QubitIndexError(
                f"Cannot concatenate circuits on {self.n_qubits} and {other.n_qubits} qubits"
            )
        return Circuit(self.n_qubits, self.gates + other.gates)

    def inverse(self) -> "Circuit":
        """Reverse the gate order and invert every gate."""
        return Circuit(
            self.n_qubits,
            tuple(GateApp(app.kind.inverse(), app.qubits) for app in reversed(self.gates)),
        )

    def remap(self, mapping: Sequence[int] | Mapping[int, int], n_qubits: int) -> "Circuit":
        """
        Embed the circuit into a larger register.

        Args:
            mapping: mapping[q] is the new index of qubit q
            n_qubits: Size of the target register

        Returns:
            Circuit on n_qubits
        """
        return Circuit(
            n_qubits,
            tuple(GateApp(app.kind, tuple(mapping[q] for q in app.qubits)) for app in self.gates),
        )

    def repeated(self, times: int) -> "Circuit":
        return Circuit(self.n_qubits, self.gates * times)

    def gate_counts(self) -> Dict[str, int]:
        """Number of applications per gate kind name, ControlledBlocks counted as one."""
        return dict(sorted(Counter(app.kind.name for app in self.gates).items()))

    def kinds(self) -> set:
        """Names of every gate kind used, including inside ControlledBlocks."""
        names = set()
        for app in self.gates:
            names.add(app.kind.name)
            if isinstance(app.kind, ControlledBlock):
                names |= app.kind.inner.kinds()
        return names


@dataclass(frozen=True)
class ControlledBlock(GateKind):
    """
    Apply the inner circuit iff the control is |1>.

    Operands are (control, q_0, ..., q_{m-1}) where q_j receives inner qubit j.
    """
    inner: Circuit
    name: ClassVar[str] = "controlled_block"
    action: ClassVar[str] = "controlled"

    @property
    def arity(self) -> int:
        return self.inner.n_qubits + 1

    def inverse(self) -> GateKind:
        return ControlledBlock(self.inner.inverse())

    def params(self) -> Dict[str, Any]:
        return {"inner": self.inner}

    def __str__(self) -> str:
        return f"{self.name}({len(self.inner)} gates)"


def circuit_of(n_qubits: int, apps: List[GateApp]) -> Circuit:
    return Circuit(n_qubits, tuple(apps))
