"""The solve command: sweep-based guard sets."""

from pathlib import Path

import typer

from ..services.solver import Side, one_sided_guard_set, verify_solution
from ..services.sweep import SweepConsistencyError, SweepTrace
from .files import ExitCode, fail, read_terrain, serialize_solution, write_output

router = typer.Typer()


@router.command()
def solve(
    terrain: Path = typer.Argument(..., help="TerrainFile to guard"),
    side: Side = typer.Option(
        Side.BOTH,
        "--side",
        help=(
            "Witnesses: left convex, right convex, or all vertices. On a terrain with a flat end, "
            "left/right use the convex vertices of the extended terrain, so a vertex at a flat end "
            "(reflex in the input) can be a witness too."
        ),
    ),
    trace: Path | None = typer.Option(None, "--trace", help="Write the sweep event trace here"),
    out: Path | None = typer.Option(None, "--out", help="Write the SolutionFile here instead of stdout"),
    verify: bool = typer.Option(False, "--verify", help="Check coverage of every vertex with the oracle"),
) -> None:
    """Compute a guard set with the sweep (a 2-approximation for --side both)."""
    t = read_terrain(terrain)
    sweep_trace = SweepTrace() if trace is not None else None
    try:
        sol = one_sided_guard_set(t, side, trace=sweep_trace)
    except SweepConsistencyError as e:
        fail(f"sweep consistency check failed: {e}", ExitCode.VERIFICATION)

    write_output(serialize_solution(sol), out)
    if sweep_trace is not None:
        write_output(sweep_trace.text(), trace)

    if verify:
        report = verify_solution(t, sol)
        if not report.covered:
            fail(f"guards leave vertices {report.uncovered} uncovered", ExitCode.VERIFICATION)
        typer.echo(f"verified: {sol.size} guards cover all {len(t)} vertices", err=True)
