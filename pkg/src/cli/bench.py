"""
Grid benchmark of the synthesis pipeline.

Each (theta, alpha, eps) cell runs in a worker process. Rows come back in
grid order regardless of completion order, so the output is deterministic.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from rich.console import Console
from rich.table import Table

from src.cli.parsing import FORMATS, POLICIES, GridCell, load_grid, parse_choice
from src.synthesis.pipeline import synthesize
from src.utils.config import get_settings
from src.utils.exceptions import GatesmithError, exit_code_for
from src.utils.jsonio import write_json

logger = logging.getLogger(__name__)

console = Console(stderr=True)

COLUMNS = [
    "theta", "alpha", "eps", "size", "ancillae", "achieved_error",
    "k1", "k2", "T", "verified", "bound_error", "policy", "error",
]

# Spread of size / (eps^-1 log eps^-1) tolerated across one (theta, alpha) row
SCALING_ENVELOPE = 3.0


def run_cell(cell: GridCell, policy: str, max_qubits: Optional[int]) -> Dict[str, Any]:
    """Synthesize one grid cell. Errors are reported in the row, not raised."""
    row: Dict[str, Any] = {column: None for column in COLUMNS}
    row.update(theta=cell.theta, alpha=cell.alpha, eps=cell.eps, policy=policy, verified=False)
    try:
        _, report = synthesize(cell.alpha, cell.theta, cell.eps, policy, max_qubits=max_qubits)
    except GatesmithError as e:
        row["error"] = f"{type(e).__name__}: {e.message}"
        return row
    row.update(
        size=report.size,
        ancillae=report.ancilla_count,
        achieved_error=report.achieved_error,
        k1=report.params.k1,
        k2=report.params.k2,
        T=report.params.grover_T,
        verified=report.verified,
        bound_error=report.bound_error,
    )
    return row


def run_grid(
    cells: List[GridCell],
    policy: str = "shared",
    max_qubits: Optional[int] = None,
    workers: Optional[int] = None,
) -> pd.DataFrame:
    """
    Run every cell and collect one row per cell, in grid order.

    Args:
        cells: Sorted grid cells
        policy: Phase-ancilla policy for every cell
        max_qubits: Dense verification cap
        workers: Worker processes; 1 runs inline

    Returns:
        DataFrame with COLUMNS
    """
    workers = workers if workers is not None else get_settings().bench_workers
    logger.info(f"Running {len(cells)} bench cells with policy {policy}")
    if workers == 1:
        rows = [run_cell(cell, policy, max_qubits) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_cell, cell, policy, max_qubits) for cell in cells]
            rows = [future.result() for future in futures]
    failed = sum(1 for row in rows if row["error"])
    if failed:
        logger.warning(f"{failed} of {len(rows)} bench cells failed")
    return pd.DataFrame(rows, columns=COLUMNS)


def scaling_summary(frame: pd.DataFrame) -> pd.DataFrame:
    """
    Compare circuit size against eps^-1 log(eps^-1) for every (theta, alpha).

    Returns:
        One row per (theta, alpha) with the min and max ratio and whether
        max/min stays within SCALING_ENVELOPE
    """
    ok = frame[frame["error"].isna() & frame["size"].notna()].copy()
    if ok.empty:
        return pd.DataFrame(columns=["theta", "alpha", "min_ratio", "max_ratio", "within_envelope"])
    ok["ratio"] = [
        size / ((1.0 / eps) * math.log(1.0 / eps)) for size, eps in zip(ok["size"], ok["eps"])
    ]
    summary = (
        ok.groupby(["theta", "alpha"], sort=False)["ratio"]
        .agg(min_ratio="min", max_ratio="max")
        .reset_index()
    )
    summary["within_envelope"] = summary["max_ratio"] <= SCALING_ENVELOPE * summary["min_ratio"]
    return summary


def render_table(frame: pd.DataFrame) -> Table:
    table = Table(title="bench")
    for column in COLUMNS:
        table.add_column(column)
    for row in frame.itertuples(index=False):
        table.add_row(*["" if value is None or value != value else str(value) for value in row])
    return table


def write_frame(frame: pd.DataFrame, path: Path, fmt: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        frame.to_csv(path, index=False)
    else:
        write_json(path, frame.astype(object).where(frame.notna(), None).to_dict(orient="records"))


def cmd_bench(
    grid: Optional[Path] = None,
    out: Optional[Path] = None,
    fmt: str = "csv",
    policy: str = "shared",
    max_qubits: Optional[int] = None,
    workers: Optional[int] = None,
) -> int:
    """
    Run the bench grid and write one row per cell.

    With out set, rows go to out and the scaling summary to
    <stem>_scaling.csv next to it. Exit 0 when every cell ran, 1 otherwise.
    """
    try:
        fmt = parse_choice(fmt, FORMATS, "--format")
        policy = parse_choice(policy, POLICIES, "--policy")
        cells = load_grid(grid)
        frame = run_grid(cells, policy, max_qubits, workers)
        summary = scaling_summary(frame)
        if out is not None:
            out = Path(out)
            write_frame(frame, out, fmt)
            summary.to_csv(out.with_name(f"{out.stem}_scaling.csv"), index=False)
            logger.info(f"Wrote {len(frame)} bench rows to {out}")
    except (GatesmithError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return exit_code_for(e)

    console.print(render_table(frame))
    if out is None:
        print(frame.to_csv(index=False), end="")
    return 0 if frame["error"].isna().all() else 1
