"""Exact scalar arithmetic and the geometric predicates.

All scalars are Python integers or `fractions.Fraction` values. Fractions are
normalized on construction (gcd-reduced, positive denominator) and have
arbitrary precision, so no predicate here can round.
"""

from __future__ import annotations

from enum import StrEnum
from fractions import Fraction
from typing import NamedTuple, TypeAlias

Rational: TypeAlias = Fraction | int


class GeometryError(ValueError):
    """Raised for degenerate lines or rays."""


class Turn(StrEnum):
    LEFT = "left"
    STRAIGHT = "straight"
    RIGHT = "right"


class Side(StrEnum):
    ABOVE = "above"
    ON = "on"
    BELOW = "below"


class Point(NamedTuple):
    """A point in the plane. Tuple order is (x, y), so sorting is left-to-right."""

    x: Rational
    y: Rational

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def cross(a: Point, b: Point, c: Point) -> Rational:
    """Cross product (b - a) x (c - a)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orient(a: Point, b: Point, c: Point) -> Turn:
    """Orientation of the triple: LEFT for a counter-clockwise turn."""
    value = cross(a, b, c)
    if value > 0:
        return Turn.LEFT
    if value < 0:
        return Turn.RIGHT
    return Turn.STRAIGHT


def side_of_line(p: Point, a: Point, b: Point) -> Side:
    """Where p lies relative to the non-vertical line through a and b."""
    if a.x == b.x:
        raise GeometryError(f"degenerate support line: {a} and {b} share x={a.x}")
    # Orient so that a is left of b; then LEFT turn means p is above.
    if b.x < a.x:
        a, b = b, a
    turn = orient(a, b, p)
    if turn is Turn.LEFT:
        return Side.ABOVE
    if turn is Turn.RIGHT:
        return Side.BELOW
    return Side.ON


def ray_intersection(
    r1: tuple[Point, Point], r2: tuple[Point, Point]
) -> Point | None:
    """Interior intersection of two rays given as (origin, through).

    Returns the crossing point when it lies strictly past both origins,
    otherwise None (parallel, collinear, divergent or behind an origin).
    """
    o1, t1 = r1
    o2, t2 = r2
    if o1 == t1 or o2 == t2:
        raise GeometryError("degenerate ray: origin equals through point")

    d1x, d1y = t1.x - o1.x, t1.y - o1.y
    d2x, d2y = t2.x - o2.x, t2.y - o2.y
    denom = d1x * d2y - d1y * d2x
    if denom == 0:
        return None

    wx, wy = o2.x - o1.x, o2.y - o1.y
    s_num = wx * d2y - wy * d2x
    u_num = wx * d1y - wy * d1x
    if denom < 0:
        s_num, u_num, denom = -s_num, -u_num, -denom
    if s_num <= 0 or u_num <= 0:
        return None
    return Point(o1.x + Fraction(s_num * d1x, denom), o1.y + Fraction(s_num * d1y, denom))


def point_on_ray(p: Point, origin: Point, through: Point) -> bool:
    """True if p lies on the closed ray from origin through `through`."""
    if cross(origin, through, p) != 0:
        return False
    dot = (p.x - origin.x) * (through.x - origin.x) + (p.y - origin.y) * (through.y - origin.y)
    return dot >= 0
