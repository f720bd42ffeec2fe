"""
gatesmith command-line interface.

Commands:
    synthesize           Approximate U_alpha over {Toffoli, S}
    verify-completeness  Check the two-qubit or three-qubit completeness argument
    bench                Run the synthesis over a (theta, alpha, eps) grid
    density-probe        Measure how densely short generator words cover SO(d)
"""

from pathlib import Path
from typing import Optional

import typer

from src.cli.bench import cmd_bench
from src.cli.commands import cmd_density_probe, cmd_synthesize, cmd_verify_completeness
from src.utils.config import get_settings
from src.utils.logging import configure_logging

app = typer.Typer(
    name="gatesmith",
    help="Compile and verify circuits over the gate set {Toffoli, S}.",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level (default from GATESMITH_LOG_LEVEL)"),
) -> None:
    configure_logging(log_level or get_settings().log_level)


@app.command()
def synthesize(
    alpha: str = typer.Option(..., "--alpha", help="Target angle, radians or p*pi/q"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Basis rotation angle"),
    eps: float = typer.Option(..., "--eps", help="Target restricted error in (0, 1)"),
    policy: str = typer.Option("shared", "--policy", help="Phase ancilla policy: shared or fresh"),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory for report.json and circuit.json"),
    basis_reflection: Optional[str] = typer.Option(
        None, "--basis-reflection", help="Use the reflection basis gate with this beta instead of --theta"
    ),
    max_qubits: Optional[int] = typer.Option(None, "--max-qubits", help="Dense verification qubit cap; larger runs are verified in the Grover plane"),
) -> None:
    """Synthesize U_alpha to restricted error eps."""
    raise typer.Exit(cmd_synthesize(alpha, theta, eps, policy, out, basis_reflection, max_qubits))


@app.command("verify-completeness")
def verify_completeness(
    case: str = typer.Option(..., "--case", help="cnot or toffoli"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Basis angle for the cnot case"),
    out: Optional[Path] = typer.Option(None, "--out", help="Report JSON file"),
) -> None:
    """Run the completeness checks for one case."""
    raise typer.Exit(cmd_verify_completeness(case, theta, out))


@app.command()
def bench(
    grid: Optional[Path] = typer.Option(None, "--grid", help="Grid JSON file; default 3x3x3 grid"),
    out: Optional[Path] = typer.Option(None, "--out", help="Output file for the rows"),
    fmt: str = typer.Option("csv", "--format", help="csv or json"),
    policy: str = typer.Option("shared", "--policy", help="Phase ancilla policy"),
    max_qubits: Optional[int] = typer.Option(None, "--max-qubits", help="Dense verification qubit cap; larger runs are verified in the Grover plane"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker processes"),
) -> None:
    """Synthesize every cell of a grid and summarize the scaling."""
    raise typer.Exit(cmd_bench(grid, out, fmt, policy, max_qubits, workers))


@app.command("density-probe")
def density_probe(
    case: str = typer.Option(..., "--case", help="cnot or toffoli"),
    theta: Optional[str] = typer.Option(None, "--theta", help="Basis angle for the cnot case"),
    max_word_len: int = typer.Option(6, "--max-word-len", help="Longest word to enumerate"),
    targets: int = typer.Option(32, "--targets", help="Random SO(d) targets"),
    seed: int = typer.Option(0, "--seed", help="Target sampling seed"),
    out: Optional[Path] = typer.Option(None, "--out", help="Report JSON file"),
) -> None:
    """Estimate how densely the generators cover SO(d)."""
    raise typer.Exit(cmd_density_probe(case, theta, max_word_len, targets, seed, out))


if __name__ == "__main__":
    app()
