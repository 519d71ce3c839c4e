"""The exact and check commands."""

from enum import StrEnum
from pathlib import Path

import typer

from ..core.terrain import Terrain
from ..models.solution import GuardSolution, Provenance
from ..services.exact import ExactCapExceeded, InfeasibleInstance, minimum_guard_set
from ..services.solver import verify_solution
from ..services.visibility import visible_from
from .files import ExitCode, fail, read_solution, read_terrain, serialize_solution, write_output

router = typer.Typer()


class VertexSet(StrEnum):
    ALL = "all"
    REFLEX = "reflex"
    CONVEX = "convex"
    LEFT = "left"
    RIGHT = "right"


def _select(t: Terrain, which: VertexSet) -> list[int]:
    return {
        VertexSet.ALL: list(range(len(t))),
        VertexSet.REFLEX: t.reflex,
        VertexSet.CONVEX: t.convex,
        VertexSet.LEFT: t.left_convex,
        VertexSet.RIGHT: t.right_convex,
    }[which]


def _assign(t: Terrain, guards: set[int], witnesses: list[int]) -> GuardSolution:
    """Give each witness to the lowest guard that sees it."""
    ordered = sorted(guards)
    views = {g: visible_from(t, g) for g in ordered}
    lists: dict[int, list[int]] = {g: [] for g in ordered}
    for w in witnesses:
        lists[next(g for g in ordered if w in views[g])].append(w)
    kept = [g for g in ordered if lists[g]]
    return GuardSolution(
        guards=kept,
        lists={g: lists[g] for g in kept},
        provenance={g: [Provenance.EXACT] for g in kept},
    )


@router.command()
def exact(
    terrain: Path = typer.Argument(..., help="TerrainFile to guard"),
    candidates: VertexSet = typer.Option(VertexSet.REFLEX, help="Vertices allowed as guards"),
    witnesses: VertexSet = typer.Option(VertexSet.ALL, help="Vertices that must be seen"),
    out: Path | None = typer.Option(None, "--out", help="Write the SolutionFile here instead of stdout"),
    cap: int | None = typer.Option(None, help="Maximum number of candidates"),
) -> None:
    """Minimum guard set by exhaustive search (small terrains only)."""
    t = read_terrain(terrain)
    wanted = _select(t, witnesses)
    try:
        guards = minimum_guard_set(t, _select(t, candidates), wanted, cap=cap)
    except ExactCapExceeded as e:
        fail(str(e), ExitCode.EXACT_CAP)
    except InfeasibleInstance as e:
        fail(str(e), ExitCode.VALIDATION)

    typer.echo(f"# optimum: {len(guards)}")
    write_output(serialize_solution(_assign(t, guards, wanted)), out)


@router.command()
def check(
    terrain: Path = typer.Argument(..., help="TerrainFile"),
    solution: Path = typer.Argument(..., help="SolutionFile to verify"),
) -> None:
    """Exit 0 iff the solution's guards see every vertex."""
    t = read_terrain(terrain)
    sol = read_solution(solution, len(t))
    report = verify_solution(t, sol)
    if not report.covered:
        fail(f"uncovered vertices: {' '.join(map(str, report.uncovered))}", ExitCode.VERIFICATION)
    typer.echo(f"ok: {sol.size} guards cover all {len(t)} vertices")
