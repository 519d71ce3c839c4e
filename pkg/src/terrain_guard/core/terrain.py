"""The validated orthogonal terrain model.

A terrain is an x-monotone chain whose edges alternate between horizontal and
vertical. Vertices are indexed left to right from 0.
"""

from __future__ import annotations

import logging
from bisect import bisect_left, bisect_right
from collections.abc import Iterable, Sequence
from enum import StrEnum

from .geometry import Point, Rational

logger = logging.getLogger(__name__)

COORDINATE_BOUND = 2**20


class VertexClass(StrEnum):
    LC = "LC"  # left convex
    RC = "RC"  # right convex
    LR = "LR"  # left reflex
    RR = "RR"  # right reflex

    @property
    def is_convex(self) -> bool:
        return self in (VertexClass.LC, VertexClass.RC)

    @property
    def is_reflex(self) -> bool:
        return not self.is_convex

    def mirrored(self) -> VertexClass:
        return _MIRRORED_CLASS[self]


_MIRRORED_CLASS = {
    VertexClass.LC: VertexClass.RC,
    VertexClass.RC: VertexClass.LC,
    VertexClass.LR: VertexClass.RR,
    VertexClass.RR: VertexClass.LR,
}


class TerrainErrorKind(StrEnum):
    NOT_MONOTONE = "NotMonotone"
    NOT_ORTHOGONAL = "NotOrthogonal"
    CONSECUTIVE_PARALLEL_EDGES = "ConsecutiveParallelEdges"
    TOO_FEW_VERTICES = "TooFewVertices"
    COORDINATE_OUT_OF_RANGE = "CoordinateOutOfRange"
    DUPLICATE_VERTEX = "DuplicateVertex"


class TerrainError(ValueError):
    """A violated terrain constraint, reported at the first offending vertex."""

    def __init__(self, kind: TerrainErrorKind, index: int, detail: str = ""):
        self.kind = kind
        self.index = index
        self.detail = detail
        message = f"{kind} at vertex {index}"
        super().__init__(f"{message}: {detail}" if detail else message)


class TerrainAlreadyVertical(ValueError):
    """extend() was asked to extend a terrain that already has vertical ends."""


class Terrain:
    """Immutable orthogonal terrain with per-vertex classes and wall partners."""

    __slots__ = ("_points", "_xs", "_ys", "_classes", "_partner")

    def __init__(self, points: Sequence[Point], classes: list[VertexClass], partner: list[int | None]):
        self._points = tuple(points)
        self._xs = [p.x for p in self._points]
        self._ys = [p.y for p in self._points]
        self._classes = tuple(classes)
        self._partner = tuple(partner)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_points(
        cls, points: Iterable[Point | tuple[int, int]], *, bounded: bool = True
    ) -> Terrain:
        """Validate `points` and build a terrain (see `validate`)."""
        return validate([Point(*p) for p in points], bounded=bounded)

    # -- accessors ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._points)

    def __getitem__(self, index: int) -> Point:
        return self._points[index]

    def __iter__(self):
        return iter(self._points)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Terrain) and self._points == other._points

    def __hash__(self) -> int:
        return hash(self._points)

    def __repr__(self) -> str:
        return f"Terrain(n={len(self)}, points={list(map(tuple, self._points))!r})"

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    @property
    def xs(self) -> list[Rational]:
        return self._xs

    @property
    def ys(self) -> list[Rational]:
        return self._ys

    @property
    def classes(self) -> tuple[VertexClass, ...]:
        return self._classes

    def vertex_class(self, v: int) -> VertexClass:
        return self._classes[v]

    def wall_partner(self, v: int) -> int | None:
        return self._partner[v]

    @property
    def starts_vertical(self) -> bool:
        return self._xs[0] == self._xs[1]

    @property
    def ends_vertical(self) -> bool:
        return self._xs[-1] == self._xs[-2]

    @property
    def has_vertical_ends(self) -> bool:
        return self.starts_vertical and self.ends_vertical

    def indices_of(self, *kinds: VertexClass) -> list[int]:
        wanted = set(kinds)
        return [i for i, c in enumerate(self._classes) if c in wanted]

    @property
    def reflex(self) -> list[int]:
        return self.indices_of(VertexClass.LR, VertexClass.RR)

    @property
    def convex(self) -> list[int]:
        return self.indices_of(VertexClass.LC, VertexClass.RC)

    @property
    def left_convex(self) -> list[int]:
        return self.indices_of(VertexClass.LC)

    @property
    def right_convex(self) -> list[int]:
        return self.indices_of(VertexClass.RC)


# -- validation and classification ---------------------------------------------


def _is_integral(value: object) -> bool:
    try:
        return value == int(value)
    except (TypeError, ValueError, OverflowError):
        return False


def validate(points: Sequence[Point], *, bounded: bool = True) -> Terrain:
    """Check the orthogonal-terrain constraints and build a Terrain.

    Raises TerrainError for the first violated constraint. `bounded=False`
    skips the coordinate range check (used for internally scaled terrains).
    """
    n = len(points)
    if n < 2:
        raise TerrainError(TerrainErrorKind.TOO_FEW_VERTICES, max(n - 1, 0), "need at least 2 vertices")

    for i, p in enumerate(points):
        for value in p:
            if not _is_integral(value):
                raise TerrainError(TerrainErrorKind.COORDINATE_OUT_OF_RANGE, i, f"coordinate {value!r} is not an integer")
            if bounded and abs(value) > COORDINATE_BOUND:
                raise TerrainError(
                    TerrainErrorKind.COORDINATE_OUT_OF_RANGE, i, f"|{value}| exceeds {COORDINATE_BOUND}"
                )

    previous_horizontal: bool | None = None
    for i in range(1, n):
        a, b = points[i - 1], points[i]
        same_x, same_y = a.x == b.x, a.y == b.y
        if same_x and same_y:
            raise TerrainError(TerrainErrorKind.DUPLICATE_VERTEX, i, f"{b} repeats vertex {i - 1}")
        if not same_x and not same_y:
            raise TerrainError(TerrainErrorKind.NOT_ORTHOGONAL, i, f"edge {a}-{b} is not axis-parallel")
        if b.x < a.x:
            raise TerrainError(TerrainErrorKind.NOT_MONOTONE, i, f"x decreases from {a.x} to {b.x}")
        horizontal = same_y
        if previous_horizontal is not None and horizontal == previous_horizontal:
            kind = "horizontal" if horizontal else "vertical"
            raise TerrainError(
                TerrainErrorKind.CONSECUTIVE_PARALLEL_EDGES, i, f"two consecutive {kind} edges end here"
            )
        previous_horizontal = horizontal

    pts = [Point(int(p.x), int(p.y)) for p in points]
    classes = _classify_points(pts)
    partner: list[int | None] = [None] * n
    for i in range(n - 1):
        if pts[i].x == pts[i + 1].x:
            partner[i], partner[i + 1] = i + 1, i
    return Terrain(pts, classes, partner)


def _classify_points(points: Sequence[Point]) -> list[VertexClass]:
    n = len(points)
    # Direction codes: "H" horizontal, "U" up, "D" down.
    steps = []
    for i in range(n - 1):
        a, b = points[i], points[i + 1]
        steps.append("H" if a.y == b.y else ("U" if b.y > a.y else "D"))

    classes = []
    for i in range(n):
        incoming = steps[i - 1] if i > 0 else None
        outgoing = steps[i] if i < n - 1 else None
        if incoming is None:
            # Start: a dummy horizontal precedes a vertical edge; a horizontal
            # start is classified as if entered from below (left reflex).
            incoming = "H" if outgoing != "H" else "U"
        if outgoing is None:
            # End: a dummy horizontal follows a vertical edge; a horizontal
            # end is classified as if left downwards (right reflex).
            outgoing = "H" if incoming != "H" else "D"
        classes.append(_CLASS_BY_TURN[(incoming, outgoing)])
    return classes


_CLASS_BY_TURN = {
    ("H", "U"): VertexClass.RC,
    ("H", "D"): VertexClass.RR,
    ("U", "H"): VertexClass.LR,
    ("D", "H"): VertexClass.LC,
}


def classify(t: Terrain) -> list[VertexClass]:
    """Per-vertex class of a valid terrain."""
    return list(t.classes)


def upper_vertex(t: Terrain, v: int) -> int:
    """U(v): the reflex vertex sharing v's vertical edge."""
    if not t.vertex_class(v).is_convex:
        raise ValueError(f"vertex {v} is {t.vertex_class(v)}, U(v) is defined for convex vertices only")
    partner = t.wall_partner(v)
    if partner is None:
        raise ValueError(f"convex vertex {v} has no vertical edge")
    return partner


def mirror(t: Terrain) -> tuple[Terrain, list[int]]:
    """Reflect x -> -x and reverse the vertex order.

    Returns the mirrored terrain and the index map (an involution,
    i <-> n - 1 - i).
    """
    n = len(t)
    mirrored = Terrain.from_points(
        (Point(-p.x, p.y) for p in reversed(t.points)), bounded=False
    )
    return mirrored, [n - 1 - i for i in range(n)]


def extend(t: Terrain) -> tuple[Terrain, int, set[int]]:
    """Add infinitesimal walls above horizontal terminal edges.

    The infinitesimal height is realized by scaling all coordinates by
    s = 2 * (x_max - x_min + 1) and adding walls of height 1. Returns the
    extended terrain, the scale factor and the indices of the added vertices.
    """
    if t.has_vertical_ends:
        raise TerrainAlreadyVertical("terrain already starts and ends with vertical edges")

    scale = 2 * (t.xs[-1] - t.xs[0] + 1)
    scaled = [Point(p.x * scale, p.y * scale) for p in t.points]
    added: set[int] = set()
    if not t.starts_vertical:
        first = scaled[0]
        scaled.insert(0, Point(first.x, first.y + 1))
        added.add(0)
    if not t.ends_vertical:
        last = scaled[-1]
        scaled.append(Point(last.x, last.y + 1))
        added.add(len(scaled) - 1)

    logger.debug("Extended terrain n=%d by %d wall(s), scale=%d", len(t), len(added), scale)
    return Terrain.from_points(scaled, bounded=False), scale, added


def original_index_offset(t: Terrain) -> int:
    """Shift of original indices inside extend(t)."""
    return 0 if t.starts_vertical else 1


def height_range_at(t: Terrain, x: Rational) -> tuple[Rational, Rational]:
    """The terrain's vertical extent at abscissa x as (y_low, y_high)."""
    xs = t.xs
    if x < xs[0] or x > xs[-1]:
        raise ValueError(f"x={x} outside terrain range [{xs[0]}, {xs[-1]}]")
    lo = bisect_left(xs, x)
    hi = bisect_right(xs, x)
    if lo < hi:
        ys = t.ys[lo:hi]
        return min(ys), max(ys)
    # Strictly inside the horizontal edge (lo - 1, lo).
    y = t.ys[lo - 1]
    return y, y
