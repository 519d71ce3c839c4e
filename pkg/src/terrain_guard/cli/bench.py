"""The bench and gen commands."""

import logging
import math
import time
from pathlib import Path

import typer
from pydantic import ValidationError

from ..config import get_settings
from ..core.terrain import COORDINATE_BOUND
from ..models.params import EndStyle, GenParams
from ..models.reports import BenchRow
from ..services.gen import random_terrain
from ..services.solver import approx_guard_set
from ..services.sweep import SweepConsistencyError
from .files import ExitCode, fail, serialize_terrain, write_output

logger = logging.getLogger(__name__)

router = typer.Typer()

COLUMNS = ("n", "seed", "m", "seconds", "vertex_events", "intersection_events", "heap_ops", "heap_bound", "ms_ops")


def heap_bound(n: int, m: int) -> float:
    """Allowed heap operations for n vertices and m guards."""
    return 20 * (n + m * math.log2(max(m, 2)))


def bench_instance(n: int, seed: int, *, max_run: int, max_jump: int) -> BenchRow:
    """Time the full pipeline on one generated terrain of about n vertices."""
    steps = max(1, n // 2 - 1)
    # Large terrains get shorter runs and walls to stay inside the coordinate bound.
    params = GenParams(
        seed=seed,
        steps=steps,
        max_run=max(1, min(max_run, COORDINATE_BOUND // steps)),
        max_jump=max(1, min(max_jump, COORDINATE_BOUND // (steps + 1))),
    )
    t = random_terrain(params)
    start = time.perf_counter()
    try:
        sol = approx_guard_set(t)
    except SweepConsistencyError as e:
        logger.error("Invariant failure on n=%d seed=%d: %s", len(t), seed, e)
        return BenchRow(
            n=len(t),
            seed=seed,
            m=0,
            seconds=time.perf_counter() - start,
            vertex_events=0,
            intersection_events=0,
            heap_ops=0,
            heap_bound=heap_bound(len(t), 0),
            ms_ops=0,
            invariants_ok=False,
        )
    seconds = time.perf_counter() - start

    counters = sol.counters
    heap_ops = sum(c.heap_ops for c in counters)
    bound = heap_bound(len(t), sol.size)
    ok = heap_ops <= bound and all(c.intersection_events <= c.final_guards for c in counters)
    return BenchRow(
        n=len(t),
        seed=seed,
        m=sol.size,
        seconds=seconds,
        vertex_events=sum(c.vertex_events for c in counters),
        intersection_events=sum(c.intersection_events for c in counters),
        heap_ops=heap_ops,
        heap_bound=bound,
        ms_ops=sum(c.ms_pushes + c.ms_pops + c.ms_deletes for c in counters),
        invariants_ok=ok,
    )


def _cell(row: BenchRow, column: str) -> str:
    value = getattr(row, column)
    if column == "seconds":
        return f"{value:.4f}"
    if column == "heap_bound":
        return f"{value:.0f}"
    return str(value)


def format_rows(rows: list[BenchRow]) -> str:
    lines = ["  ".join(f"{c:>12}" for c in COLUMNS) + "  ok"]
    for row in rows:
        cells = "  ".join(f"{_cell(row, c):>12}" for c in COLUMNS)
        lines.append(cells + ("  yes" if row.invariants_ok else "  FAIL"))
    return "\n".join(lines) + "\n"


@router.command()
def bench(
    sizes: str | None = typer.Option(None, help="Comma-separated vertex counts"),
    seeds: int | None = typer.Option(None, help="Seeds per size"),
    max_run: int | None = typer.Option(None, help="Maximum horizontal run"),
    max_jump: int | None = typer.Option(None, help="Maximum wall height"),
) -> None:
    """Time the 2-approximation on generated terrains and check operation counts."""
    settings = get_settings()
    try:
        size_list = [int(s) for s in sizes.split(",") if s.strip()] if sizes else settings.bench_size_list
    except ValueError:
        fail(f"bad --sizes value {sizes!r}", ExitCode.USAGE)
    rows = [
        bench_instance(
            n,
            seed,
            max_run=max_run or settings.bench_max_run,
            max_jump=max_jump or settings.bench_max_jump,
        )
        for n in size_list
        for seed in range(seeds or settings.bench_seeds)
    ]
    typer.echo(format_rows(rows), nl=False)
    failed = sum(not row.invariants_ok for row in rows)
    if failed:
        typer.echo(f"{failed} row(s) violate the counter invariants", err=True)


@router.command()
def gen(
    seed: int = typer.Option(0, help="Generator seed"),
    steps: int = typer.Option(4, help="Number of horizontal runs"),
    max_run: int = typer.Option(5, help="Maximum horizontal run"),
    max_jump: int = typer.Option(5, help="Maximum wall height"),
    ends: EndStyle = typer.Option(EndStyle.VERTICAL_BOTH, help="Terminal edge style"),
    out: Path | None = typer.Option(None, "--out", help="Write the TerrainFile here instead of stdout"),
) -> None:
    """Write a seeded random terrain as a TerrainFile."""
    try:
        params = GenParams(seed=seed, steps=steps, max_run=max_run, max_jump=max_jump, ends=ends)
    except ValidationError as e:
        fail(f"invalid generator parameters: {e.errors()[0]['msg']}", ExitCode.USAGE)
    write_output(serialize_terrain(random_terrain(params)), out)
