"""Brute-force visibility between terrain vertices.

Two points see each other when the segment between them is never strictly
below the terrain. Touching the terrain (sliding along a horizontal edge or
passing through a point of a wall) counts as visible.
"""

from __future__ import annotations

import logging

from ..config import get_settings
from ..core.terrain import Terrain, VertexClass

logger = logging.getLogger(__name__)


class VisibilityCapExceeded(ValueError):
    """The terrain is larger than the all-pairs oracle is allowed to handle."""


def _check_index(t: Terrain, *indices: int) -> None:
    for i in indices:
        if not 0 <= i < len(t):
            raise IndexError(f"vertex index {i} out of range for terrain of {len(t)} vertices")


def sees(t: Terrain, p: int, q: int) -> bool:
    """Reference visibility test between vertices p and q.

    Every horizontal edge overlapping (p.x, q.x) with positive length must
    lie on or below the segment at both ends of the overlap.
    """
    _check_index(t, p, q)
    if p == q:
        return True
    if p > q:
        p, q = q, p
    xs, ys = t.xs, t.ys
    px, py, qx, qy = xs[p], ys[p], xs[q], ys[q]
    if px == qx:
        # Two distinct vertices at one abscissa are the ends of one wall.
        return True

    dx, dy = qx - px, qy - py
    for i in range(p, q):
        h = ys[i]
        if ys[i + 1] != h:
            continue
        lo, hi = max(xs[i], px), min(xs[i + 1], qx)
        if lo >= hi:
            continue
        # seg_y(x) >= h  <=>  py*dx + dy*(x - px) >= h*dx  (dx > 0)
        if py * dx + dy * (lo - px) < h * dx or py * dx + dy * (hi - px) < h * dx:
            return False
    return True


def _scan(t: Terrain, p: int, step: int) -> list[int]:
    """Vertices visible from p on one side, by a max-slope scan."""
    xs, ys = t.xs, t.ys
    n = len(t)
    px, py = xs[p], ys[p]
    visible: list[int] = []

    j = p + step
    if 0 <= j < n and xs[j] == px:
        visible.append(j)
        if ys[j] > py:
            # A wall rising beside p hides everything beyond it.
            return visible
        j += step

    best_dy, best_dx = 0, 0
    has_best = False
    while 0 <= j < n:
        group = [j]
        k = j
        while 0 <= k + step < n and xs[k + step] == xs[j]:
            k += step
            group.append(k)
        dx = abs(xs[j] - px)
        first_y = ys[j]
        for pos, q in enumerate(group):
            dy = ys[q] - py
            if has_best and dy * best_dx < best_dy * dx:
                continue
            if pos > 0 and first_y > dy + py:
                # The edge entering the wall sits above q at q's abscissa.
                continue
            visible.append(q)
        for q in group:
            dy = ys[q] - py
            if not has_best or dy * best_dx > best_dy * dx:
                best_dy, best_dx, has_best = dy, dx, True
        j = k + step
    return visible


def visible_from(t: Terrain, p: int) -> set[int]:
    """All vertices visible from p (p included), in O(n)."""
    _check_index(t, p)
    return {p, *_scan(t, p, +1), *_scan(t, p, -1)}


def right_horizon_bruteforce(t: Terrain, v: int) -> int:
    """R(v): the rightmost reflex vertex that sees the left convex vertex v."""
    _check_index(t, v)
    if t.vertex_class(v) is not VertexClass.LC:
        raise ValueError(f"vertex {v} is {t.vertex_class(v)}, right horizons are defined for LC vertices")
    seen = visible_from(t, v)
    return max(r for r in seen if t.vertex_class(r).is_reflex)


class VisibilityMatrix:
    """All-pairs visibility, stored as one bitmask row per vertex."""

    __slots__ = ("_rows",)

    def __init__(self, rows: list[int]):
        self._rows = rows

    def __len__(self) -> int:
        return len(self._rows)

    def sees(self, p: int, q: int) -> bool:
        return bool(self._rows[p] >> q & 1)

    def mask(self, p: int) -> int:
        return self._rows[p]

    def row(self, p: int) -> set[int]:
        mask, out, i = self._rows[p], set(), 0
        while mask:
            if mask & 1:
                out.add(i)
            mask >>= 1
            i += 1
        return out

    def is_symmetric(self) -> bool:
        n = len(self)
        return all(self.sees(p, q) == self.sees(q, p) for p in range(n) for q in range(n))


def visibility_matrix(t: Terrain, cap: int | None = None) -> VisibilityMatrix:
    """All-pairs visibility of a terrain of at most `cap` vertices."""
    cap = get_settings().visibility_cap if cap is None else cap
    if len(t) > cap:
        raise VisibilityCapExceeded(f"terrain has {len(t)} vertices, visibility cap is {cap}")
    rows = []
    for p in range(len(t)):
        mask = 0
        for q in visible_from(t, p):
            mask |= 1 << q
        rows.append(mask)
    logger.debug("Built %dx%d visibility matrix", len(t), len(t))
    return VisibilityMatrix(rows)
