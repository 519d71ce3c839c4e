"""Upper-hull stack maintained right to left, yielding right horizons.

For a left convex vertex v that is not the rightmost vertex, R(v) is the
neighbor of v on the upper hull of v and everything to its right; for the
rightmost vertex R(v) is its wall partner.
"""

from __future__ import annotations

import logging

from ..core.geometry import Turn, orient
from ..core.terrain import Terrain, VertexClass, upper_vertex
from .visibility import right_horizon_bruteforce

logger = logging.getLogger(__name__)


class UpperHullStack:
    """Stack of vertex indices; the top is the leftmost hull vertex so far."""

    def __init__(self, terrain: Terrain):
        self.terrain = terrain
        self._stack: list[int] = []
        self.pops = 0
        self.fallbacks = 0

    def __len__(self) -> int:
        return len(self._stack)

    @property
    def contents(self) -> list[int]:
        return list(self._stack)

    def push_vertex(self, v: int) -> int | None:
        """Add v (left of everything pushed so far); return R(v) for LC v."""
        t = self.terrain
        stack = self._stack
        if stack and v >= stack[-1]:
            raise ValueError(f"vertex {v} pushed out of order after {stack[-1]}")

        pv = t[v]
        # Collinear hull points are dropped so the neighbor is the farthest one.
        while len(stack) >= 2 and orient(pv, t[stack[-1]], t[stack[-2]]) is not Turn.RIGHT:
            stack.pop()
            self.pops += 1

        horizon: int | None = None
        if t.vertex_class(v) is VertexClass.LC:
            if not stack:
                horizon = upper_vertex(t, v)
            else:
                horizon = stack[-1]
                if not t.vertex_class(horizon).is_reflex:
                    logger.warning(
                        "Hull neighbor %d of LC vertex %d is convex; using brute-force horizon", horizon, v
                    )
                    self.fallbacks += 1
                    horizon = right_horizon_bruteforce(t, v)
        stack.append(v)
        return horizon


def right_horizons(t: Terrain) -> dict[int, int]:
    """R(v) for every left convex vertex, in one right-to-left pass."""
    hull = UpperHullStack(t)
    horizons: dict[int, int] = {}
    for v in range(len(t) - 1, -1, -1):
        r = hull.push_vertex(v)
        if r is not None:
            horizons[v] = r
    logger.debug("Computed %d right horizons with %d hull pops", len(horizons), hull.pops)
    return horizons
