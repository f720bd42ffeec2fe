"""
End-to-end synthesis of U_alpha over {Toffoli, S}.

Flow:
1. Parameter selection (k1, gamma, T, k2)
2. W_alpha in the IR, with exact reflections and Z
3. Lowering to Toffoli and S with phase ancillae for every Z
4. Verification of the sigma_z-level circuit with phase registers marginalized,
   densely when its system qubits fit the cap, otherwise in the Grover plane
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

from src.qsim.angles import AngleLike, as_angle
from src.qsim.circuit import Circuit, ControlledBlock
from src.qsim.gates import MarkNonZeroFlip, ReflectZero, Z_GATE
from src.synthesis.basis import BasisSpec
from src.synthesis.grover import grover_iteration, t_layer
from src.synthesis.lowering import BasisLowering, LoweredCircuit, QubitAllocator, SigmaZSpec, lower_to_basis
from src.synthesis.models import SynthesisReport
from src.synthesis.params import (
    AncillaPolicy,
    SynthesisConfig,
    SynthesisParams,
    accumulation_bound,
    error_bound,
    select_params,
    sigma_z_bound,
)
from src.synthesis.verification import marginal_restricted_error, plane_restricted_error
from src.synthesis.w_alpha import SigmaZApprox, build_W_alpha, target_operator
from src.utils.config import get_settings

logger = logging.getLogger(__name__)


def w_alpha_pieces(alpha: AngleLike, basis: BasisSpec, params: SynthesisParams) -> List[Tuple[Circuit, int]]:
    """
    W_alpha as (piece, repetitions) in gate order, without expanding the Grover loop.

    Concatenating piece * repetitions gives build_W_alpha(alpha, theta, k1).
    """
    k = params.k1
    n = 1 + 2 * k
    pairs = list(range(1, n))
    theta = basis.s_theta
    layer = t_layer(theta, k)
    prep = layer.remap(pairs, n)
    iteration = grover_iteration(theta, k).remap(pairs, n)
    tail = Circuit.from_ops(
        n,
        [
            (MarkNonZeroFlip(2 * k), (*pairs, 0)),
            (ControlledBlock(layer), (0, *pairs)),
        ],
    )
    forward: List[Tuple[Circuit, int]] = [(prep, 1), (iteration, params.grover_T)]
    if params.reflected:
        forward.append((Circuit.from_ops(n, [(ReflectZero(2 * k), tuple(pairs))]), 1))
    forward.append((tail, 1))
    backward = [(piece.inverse(), times) for piece, times in reversed(forward)]
    return (
        [(Circuit.from_ops(n, [(Z_GATE, (0,))]), 1)]
        + backward
        + [(Circuit.from_ops(n, [(ReflectZero(n, negated=True), tuple(range(n)))]), 1)]
        + forward
    )


def count_lowered(
    pieces: List[Tuple[Circuit, int]],
    basis: BasisSpec,
    sigma_z: SigmaZSpec,
) -> Tuple[Dict[str, int], int]:
    """
    Gate counts and ancilla count of the lowered circuit, lowering each piece once.

    Returns:
        (counts by kind, qubits added by lowering)
    """
    n = pieces[0][0].n_qubits
    alloc = QubitAllocator(n)
    # One register stands in for every phase register while counting
    counter = BasisLowering(basis, SigmaZSpec(sigma_z.k2, "shared"), alloc, count_only=True)
    totals: Counter = Counter()
    uses = 0
    for piece, times in pieces:
        if times == 0:
            continue
        before = Counter(counter.counts)
        counter.lower(piece)
        delta = Counter(counter.counts)
        delta.subtract(before)
        for name, count in delta.items():
            totals[name] += count * times
        uses += times * sum(1 for app in piece if app.kind.name in ("z", "reflect_zero"))
    width = 2 * sigma_z.k2
    counted = width if alloc.phase_registers else 0
    phase = width if sigma_z.policy == "shared" else width * uses
    added = alloc.ancilla_count - counted + (phase if uses else 0)
    return dict(sorted(totals.items())), added


def synthesize(
    alpha: AngleLike,
    theta: AngleLike,
    eps: float,
    ancilla_policy: AncillaPolicy = "shared",
    basis: Optional[BasisSpec] = None,
    config: Optional[SynthesisConfig] = None,
    max_qubits: Optional[int] = None,
) -> Tuple[Optional[LoweredCircuit], SynthesisReport]:
    """
    Synthesize U_alpha to restricted error eps.

    Args:
        alpha: Target rotation angle
        theta: Basis angle (ignored when basis is given)
        eps: Target precision, 0 < eps < 1
        ancilla_policy: "shared" or "fresh" phase ancillae
        basis: Basis gate; a rotation by theta when None
        config: Parameter selection knobs
        max_qubits: Dense verification cap, defaults to the configured max_qubits;
            larger runs are verified in the Grover plane

    Returns:
        (lowered circuit, or None when too large to materialize; report)
    """
    config = config or SynthesisConfig()
    basis = basis or BasisSpec.rotation(theta)
    alpha = as_angle(alpha)
    cap = max_qubits if max_qubits is not None else get_settings().max_qubits
    params = select_params(alpha, basis.s_theta, eps, ancilla_policy, config)
    sigma_z = SigmaZSpec(params.k2, params.policy)
    n = 1 + 2 * params.k1

    counts, added = count_lowered(w_alpha_pieces(alpha, basis, params), basis, sigma_z)
    size = sum(counts.values())
    lowered: Optional[LoweredCircuit] = None
    if size <= config.max_materialized_gates:
        lowered = lower_to_basis(build_W_alpha(alpha, basis.s_theta, params.k1), basis, sigma_z)
        counts, added = lowered.gate_counts(), lowered.ancilla_count
        size = len(lowered.body)
    else:
        logger.warning(
            f"Lowered circuit has {size} gates, above the materialization limit of "
            f"{config.max_materialized_gates}; reporting counts only"
        )

    n_system = n + 1
    sigma_mode = SigmaZApprox(params.k2, params.policy)
    note: Optional[str] = None
    if n_system <= cap:
        sigma_level = build_W_alpha(alpha, basis.s_theta, params.k1, sigma_mode)
        achieved = marginal_restricted_error(
            target_operator(alpha), sigma_level, n_system, basis.s_theta, max_qubits=cap
        )
        method = "dense"
    else:
        achieved = plane_restricted_error(alpha, basis.s_theta, params.k1, sigma_mode)
        method = "plane"
        note = f"{n_system} system qubits exceed the dense cap of {cap}; verified in the Grover plane"
        logger.info(note)

    bound = error_bound(basis.s_theta, params)
    report = SynthesisReport(
        alpha=alpha.radians,
        theta=basis.theta,
        eps=eps,
        basis="reflection" if basis.s_is_reflection else "rotation",
        achieved_error=achieved,
        bound_error=bound,
        accumulation_bound=accumulation_bound(sigma_z_bound(basis.s_theta, params.k2), params.sigma_z_uses),
        verified=True,
        verification_method=method,
        verification_note=note,
        gate_counts=counts,
        size=size,
        n_qubits=1 + (n - 1) + added,
        ancilla_count=(n - 1) + added,
        ancilla_bits=("0" * (n - 1) + lowered.ancilla_bits) if lowered is not None else None,
        circuit_materialized=lowered is not None,
        params=params,
    )
    logger.info(
        f"Synthesized U_alpha (alpha={alpha}): {size} gates, {report.ancilla_count} ancillae, "
        f"achieved {achieved:.3e} ({method}; bound {bound:.3e}, eps {eps})"
    )
    return lowered, report
