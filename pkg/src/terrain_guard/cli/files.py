"""Terrain and solution text formats, and CLI exit handling.

TerrainFile: the vertex count n, then n lines "x y" left to right.
SolutionFile: the guard count g, then g lines "guard: w1 w2 ..." with
witnesses in list order, then "# provenance guard: tag ..." comment lines.
In both, '#' starts a comment line and blank lines are skipped. All vertex
indices are 0-based.
"""

from __future__ import annotations

import logging
from enum import IntEnum
from pathlib import Path
from typing import NoReturn

import typer

from ..core.terrain import Terrain, TerrainError
from ..models.solution import GuardSolution, Provenance

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    USAGE = 1
    VALIDATION = 2
    VERIFICATION = 3
    EXACT_CAP = 4


class TerrainFileError(ValueError):
    """A malformed or invalid input file, located by 1-based line number."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


def fail(message: str, code: ExitCode) -> NoReturn:
    """Print an error to stderr and leave with the given exit code."""
    typer.echo(f"error: {message}", err=True)
    raise typer.Exit(code=int(code))


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((number, line))
    return out


def _int(token: str, line: int) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise TerrainFileError(f"expected a base-10 integer, got {token!r}", line) from None


def parse_terrain(text: str) -> Terrain:
    lines = _content_lines(text)
    if not lines:
        raise TerrainFileError("missing vertex count", 1)
    count_line, count_text = lines[0]
    n = _int(count_text, count_line)
    body = lines[1:]
    if len(body) != n:
        last = body[-1][0] if body else count_line
        raise TerrainFileError(f"header announces {n} vertices, found {len(body)}", last)

    points = []
    for number, line in body:
        tokens = line.split()
        if len(tokens) != 2:
            raise TerrainFileError(f"expected 'x y', got {line!r}", number)
        points.append((_int(tokens[0], number), _int(tokens[1], number)))
    try:
        return Terrain.from_points(points)
    except TerrainError as e:
        line = body[e.index][0] if body else count_line
        raise TerrainFileError(str(e), line) from e


def serialize_terrain(t: Terrain) -> str:
    return f"{len(t)}\n" + "".join(f"{p.x} {p.y}\n" for p in t)


def read_terrain(path: Path) -> Terrain:
    """Load a TerrainFile, exiting with the CLI's error codes on failure."""
    try:
        text = path.read_text()
    except OSError as e:
        fail(f"cannot read {path}: {e.strerror}", ExitCode.USAGE)
    try:
        return parse_terrain(text)
    except TerrainFileError as e:
        fail(f"{path}: {e}", ExitCode.VALIDATION)


def serialize_solution(sol: GuardSolution) -> str:
    lines = [str(sol.size)]
    for g in sol.guards:
        lines.append(f"{g}: " + " ".join(map(str, sol.list_of(g))))
    for g in sol.guards:
        tags = sol.provenance.get(g)
        if tags:
            lines.append(f"# provenance {g}: " + " ".join(tags))
    return "\n".join(lines) + "\n"


def parse_solution(text: str, n: int | None = None) -> GuardSolution:
    """Read a SolutionFile; with n given, indices are range-checked."""
    provenance: dict[int, list[Provenance]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("# provenance"):
            head, _, tags = line.removeprefix("# provenance").partition(":")
            try:
                provenance[_int(head.strip(), number)] = [Provenance(tag) for tag in tags.split()]
            except ValueError as e:
                raise TerrainFileError(f"bad provenance line: {e}", number) from None

    lines = _content_lines(text)
    if not lines:
        raise TerrainFileError("missing guard count", 1)
    count_line, count_text = lines[0]
    g = _int(count_text, count_line)
    body = lines[1:]
    if len(body) != g:
        raise TerrainFileError(f"header announces {g} guards, found {len(body)}", body[-1][0] if body else count_line)

    lists: dict[int, list[int]] = {}
    for number, line in body:
        head, sep, rest = line.partition(":")
        if not sep:
            raise TerrainFileError(f"expected 'guard: witnesses', got {line!r}", number)
        guard = _int(head.strip(), number)
        witnesses = [_int(tok, number) for tok in rest.split()]
        if not witnesses:
            raise TerrainFileError(f"guard {guard} has no witnesses", number)
        if guard in lists:
            raise TerrainFileError(f"guard {guard} listed twice", number)
        if n is not None:
            for i in (guard, *witnesses):
                if not 0 <= i < n:
                    raise TerrainFileError(f"vertex index {i} out of range for {n} vertices", number)
        lists[guard] = witnesses

    guards = sorted(lists)
    return GuardSolution(
        guards=guards,
        lists=lists,
        provenance={g: provenance.get(g, []) for g in guards},
    )


def read_solution(path: Path, n: int) -> GuardSolution:
    try:
        text = path.read_text()
    except OSError as e:
        fail(f"cannot read {path}: {e.strerror}", ExitCode.USAGE)
    try:
        return parse_solution(text, n)
    except TerrainFileError as e:
        fail(f"{path}: {e}", ExitCode.VALIDATION)


def write_output(text: str, out: Path | None) -> None:
    """Write text to `out`, or to standard output when no path is given."""
    if out is None:
        typer.echo(text, nl=False)
        return
    try:
        out.write_text(text)
    except OSError as e:
        fail(f"cannot write {out}: {e.strerror}", ExitCode.USAGE)
    logger.info("Wrote %s", out)
