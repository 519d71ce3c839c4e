"""SVG rendering of a terrain with an optional guard solution."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path

import typer

from ..config import get_settings
from ..core.terrain import Terrain
from ..models.solution import GuardSolution
from .files import read_solution, read_terrain, write_output

router = typer.Typer()

SVG_NS = "http://www.w3.org/2000/svg"


def _fmt(value) -> str:
    return f"{float(value):g}"


def render_svg(
    t: Terrain, sol: GuardSolution | None = None, *, scale: int | None = None, margin: int | None = None
) -> str:
    """SVG 1.1 document: the terrain polyline, guards as circles, witness links dashed."""
    settings = get_settings()
    scale = settings.render_scale if scale is None else scale
    margin = settings.render_margin if margin is None else margin

    x0, y1 = min(t.xs), max(t.ys)
    width = (max(t.xs) - x0) * scale + 2 * margin
    height = (y1 - min(t.ys)) * scale + 2 * margin

    def screen(v: int) -> tuple[str, str]:
        # Screen y grows downwards.
        p = t[v]
        return _fmt(margin + (p.x - x0) * scale), _fmt(margin + (y1 - p.y) * scale)

    svg = ET.Element(
        "svg",
        xmlns=SVG_NS,
        version="1.1",
        width=_fmt(width),
        height=_fmt(height),
        viewBox=f"0 0 {_fmt(width)} {_fmt(height)}",
    )
    ET.SubElement(
        svg,
        "polyline",
        points=" ".join(",".join(screen(v)) for v in range(len(t))),
        fill="none",
        stroke="black",
    )
    if sol is not None:
        links = ET.SubElement(svg, "g", stroke="steelblue")
        guards = ET.SubElement(svg, "g", fill="crimson")
        for g in sol.guards:
            gx, gy = screen(g)
            for w in sol.list_of(g):
                wx, wy = screen(w)
                ET.SubElement(links, "line", x1=gx, y1=gy, x2=wx, y2=wy, **{"stroke-dasharray": "4 2"})
            ET.SubElement(guards, "circle", cx=gx, cy=gy, r="4")

    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


@router.command()
def render(
    terrain: Path = typer.Argument(..., help="TerrainFile to draw"),
    solution: Path | None = typer.Option(None, "--solution", help="SolutionFile whose guards are drawn"),
    out: Path | None = typer.Option(None, "--out", help="Write the SVG here instead of stdout"),
    scale: int | None = typer.Option(None, help="Pixels per terrain unit"),
) -> None:
    """Render a terrain (and optionally a solution) as SVG."""
    t = read_terrain(terrain)
    sol = read_solution(solution, len(t)) if solution is not None else None
    write_output(render_svg(t, sol, scale=scale), out)
