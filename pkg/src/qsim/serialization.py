"""
Circuit JSON documents.

Format:
    {"n_qubits": N, "gates": [{"kind": "toffoli", "qubits": [0, 1, 2]},
                              {"kind": "s_theta", "theta": 0.5235987755982988, "qubits": [3]}]}

Kinds are snake_case; angles are radians at full double precision. A
controlled_block carries its inner circuit under "inner".
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.qsim.angles import Angle
from src.qsim.circuit import Circuit, ControlledBlock, GateApp
from src.qsim.gates import (
    CNOT,
    H,
    MarkNonZeroFlip,
    ReflectZero,
    SigmaZTilde,
    SReflect,
    STheta,
    SThetaInv,
    Toffoli,
    X,
    Z,
    GateKind,
)
from src.utils.exceptions import GatesmithError
from src.utils.jsonio import read_json, write_json

_SIMPLE_KINDS: Dict[str, Type[GateKind]] = {
    cls.name: cls for cls in (X, CNOT, Toffoli, Z, H)
}


class GateDocument(BaseModel):
    """One gate application."""

    model_config = ConfigDict(extra="forbid")

    kind: str
    qubits: List[int]
    theta: Optional[float] = None
    beta: Optional[float] = None
    arity: Optional[int] = Field(default=None, ge=1)
    negated: Optional[bool] = None
    k: Optional[int] = Field(default=None, ge=1)
    inner: Optional["CircuitDocument"] = None


class CircuitDocument(BaseModel):
    """A circuit as exchanged in JSON."""

    model_config = ConfigDict(extra="forbid")

    n_qubits: int = Field(ge=1)
    gates: List[GateDocument] = Field(default_factory=list)


GateDocument.model_rebuild()


def _kind_to_fields(kind: GateKind) -> dict:
    if isinstance(kind, ControlledBlock):
        return {"inner": circuit_to_document(kind.inner)}
    return kind.params()


def _kind_from_document(doc: GateDocument) -> GateKind:
    def need(value, field_name):
        if value is None:
            raise GatesmithError(
                f"Gate {doc.kind!r} requires field {field_name!r}",
                context={"gate": doc.model_dump(exclude_none=True)},
            )
        return value

    if doc.kind in _SIMPLE_KINDS:
        return _SIMPLE_KINDS[doc.kind]()
    if doc.kind == STheta.name:
        return STheta(Angle(need(doc.theta, "theta")))
    if doc.kind == SThetaInv.name:
        return SThetaInv(Angle(need(doc.theta, "theta")))
    if doc.kind == SReflect.name:
        return SReflect(Angle(need(doc.beta, "beta")))
    if doc.kind == ReflectZero.name:
        return ReflectZero(need(doc.arity, "arity"), bool(doc.negated))
    if doc.kind == MarkNonZeroFlip.name:
        return MarkNonZeroFlip(need(doc.arity, "arity"))
    if doc.kind == SigmaZTilde.name:
        return SigmaZTilde(need(doc.k, "k"))
    if doc.kind == ControlledBlock.name:
        return ControlledBlock(circuit_from_document(need(doc.inner, "inner")))
    raise GatesmithError(f"Unknown gate kind {doc.kind!r}", context={"kind": doc.kind})


def circuit_to_document(circuit: Circuit) -> CircuitDocument:
    """Convert a Circuit to its JSON document."""
    return CircuitDocument(
        n_qubits=circuit.n_qubits,
        gates=[
            GateDocument(kind=app.kind.name, qubits=list(app.qubits), **_kind_to_fields(app.kind))
            for app in circuit.gates
        ],
    )


def circuit_from_document(doc: CircuitDocument) -> Circuit:
    """Convert a JSON document back to a validated Circuit."""
    return Circuit(
        doc.n_qubits,
        tuple(GateApp(_kind_from_document(g), tuple(g.qubits)) for g in doc.gates),
    )


def circuit_to_dict(circuit: Circuit) -> dict:
    return circuit_to_document(circuit).model_dump(mode="json", exclude_none=True)


def circuit_from_dict(data: dict) -> Circuit:
    try:
        doc = CircuitDocument.model_validate(data)
    except ValidationError as e:
        raise GatesmithError(f"Invalid circuit document: {e.error_count()} error(s)", context={"errors": e.errors()})
    return circuit_from_document(doc)


def save_circuit(path: Path | str, circuit: Circuit) -> None:
    write_json(path, circuit_to_dict(circuit))


def load_circuit(path: Path | str) -> Circuit:
    return circuit_from_dict(read_json(path))
