"""
Command implementations behind the typer app.

Every command returns an exit code: 0 success, 1 failed verification or an
unexpected error, 2 precondition violation, 3 I/O failure.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any, Optional

from rich.console import Console
from rich.table import Table

from src.cli.parsing import CASES, POLICIES, parse_angle, parse_choice, parse_eps
from src.completeness.constructions import theorem3_generators, theorem4_generators
from src.completeness.density import DensityProbeConfig, density_probe
from src.completeness.suite import CompletenessReport, run_completeness_suite
from src.qsim.serialization import save_circuit
from src.synthesis.basis import BasisSpec
from src.synthesis.pipeline import synthesize
from src.utils.exceptions import GatesmithError, PreconditionError, exit_code_for
from src.utils.jsonio import canonical_json, write_json

logger = logging.getLogger(__name__)

console = Console(stderr=True)


def _emit(obj: Any, out: Optional[Path]) -> None:
    """Write canonical JSON to out, or to stdout."""
    if out is None:
        sys.stdout.buffer.write(canonical_json(obj))
        sys.stdout.flush()
    else:
        write_json(out, obj)
        logger.info(f"Wrote {out}")


def _fail(error: BaseException) -> int:
    code = exit_code_for(error)
    if isinstance(error, GatesmithError):
        logger.error(f"{type(error).__name__}: {error.message}")
    else:
        logger.error(f"{type(error).__name__}: {error}")
    return code


def cmd_synthesize(
    alpha: str,
    theta: Optional[str],
    eps: float,
    policy: str = "shared",
    out: Optional[Path] = None,
    basis_reflection: Optional[str] = None,
    max_qubits: Optional[int] = None,
) -> int:
    """
    Synthesize U_alpha and write the report (and circuit) JSON.

    With out set, out is a directory receiving report.json and, when the
    circuit was materialized, circuit.json. Otherwise the report goes to stdout.
    """
    try:
        alpha_angle = parse_angle(alpha, "--alpha")
        eps = parse_eps(eps)
        policy = parse_choice(policy, POLICIES, "--policy")
        if basis_reflection is not None:
            basis = BasisSpec.reflection(parse_angle(basis_reflection, "--basis-reflection"))
        elif theta is not None:
            basis = BasisSpec.rotation(parse_angle(theta, "--theta"))
        else:
            raise PreconditionError("synthesize needs --theta or --basis-reflection")

        lowered, report = synthesize(
            alpha_angle, basis.s_theta, eps, policy, basis=basis, max_qubits=max_qubits
        )
        if out is None:
            _emit(report, None)
        else:
            out = Path(out)
            write_json(out / "report.json", report)
            if lowered is not None:
                save_circuit(out / "circuit.json", lowered.body)
            logger.info(f"Wrote synthesis output to {out}")
    except (GatesmithError, OSError) as e:
        return _fail(e)

    console.print(
        f"verified ({report.verification_method}): achieved {report.achieved_error:.3e} <= eps {eps}"
        if report.meets_target
        else f"[red]verification failed: achieved {report.achieved_error:.3e} > eps {eps}[/red]"
    )
    return 0 if report.meets_target else 1


def render_completeness(report: CompletenessReport) -> Table:
    table = Table(title=f"completeness: {report.case}")
    table.add_column("check")
    table.add_column("status")
    for check in report.checks:
        style = {"pass": "green", "fail": "red"}.get(check.status, "dim")
        table.add_row(check.name, f"[{style}]{check.status}[/{style}]")
    return table


def cmd_verify_completeness(case: str, theta: Optional[str] = None, out: Optional[Path] = None) -> int:
    """Run the completeness suite; exit 0 iff every asserted check passes."""
    try:
        case = parse_choice(case, CASES, "--case")
        angle = parse_angle(theta, "--theta") if theta is not None else None
        report = run_completeness_suite(case, angle)
        _emit(report, out)
    except (GatesmithError, OSError) as e:
        return _fail(e)
    console.print(render_completeness(report))
    return 0 if report.passed else 1


def cmd_density_probe(
    case: str,
    theta: Optional[str] = None,
    max_word_len: int = 6,
    targets: int = 32,
    seed: int = 0,
    out: Optional[Path] = None,
) -> int:
    """Estimate density of the cnot ({U, CNOT01, CNOT10}) or toffoli ({U, U1..U6}) generators."""
    try:
        case = parse_choice(case, CASES, "--case")
        if case == "cnot":
            if theta is None:
                raise PreconditionError("The cnot case needs --theta")
            generators = theorem3_generators(parse_angle(theta, "--theta"))
        else:
            generators = theorem4_generators()
        report = density_probe(generators, max_word_len, targets, seed, DensityProbeConfig())
        _emit(report, out)
    except (GatesmithError, OSError) as e:
        return _fail(e)
    console.print(
        f"{report.n_words} words up to length {report.max_word_len}: "
        f"median distance {report.median_distance:.4f}"
    )
    return 0
