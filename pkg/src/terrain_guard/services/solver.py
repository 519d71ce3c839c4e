"""The 2-approximation pipeline for guarding all vertices of a terrain.

Both one-sided sweeps run on a terrain with vertical ends (extended if
needed); their guard sets are joined, any guard standing on an added wall
vertex is swapped for an original vertex, and indices are mapped back.
"""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Iterable
from enum import StrEnum

from ..config import get_settings
from ..core.terrain import Terrain, extend, mirror, original_index_offset
from ..models.reports import CoverageReport
from ..models.solution import GuardSolution, InstrumentationCounters, Provenance
from .sweep import SweepTrace, run_left_sweep
from .visibility import visible_from

logger = logging.getLogger(__name__)


class RetractionError(RuntimeError):
    """No original vertex can take over the witnesses of an added guard."""


class Side(StrEnum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


def _prepare(t: Terrain) -> Terrain:
    if t.has_vertical_ends:
        return t
    t_ext, _, _ = extend(t)
    return t_ext


def _right_sweep(t: Terrain, trace: SweepTrace | None = None) -> GuardSolution:
    """Left sweep of the mirrored terrain, mapped back to t's indices."""
    mirrored, index_map = mirror(t)
    sol = run_left_sweep(mirrored, trace=trace)
    guards = sorted(index_map[g] for g in sol.guards)
    return GuardSolution(
        guards=guards,
        lists={index_map[g]: [index_map[w] for w in ws] for g, ws in sol.lists.items()},
        provenance={g: [Provenance.RIGHT_SWEEP] for g in guards},
        counters=sol.counters,
    )


def merge_solutions(*solutions: GuardSolution) -> GuardSolution:
    """Union of guard sets; a guard chosen twice keeps both lists in order."""
    lists: dict[int, list[int]] = {}
    provenance: dict[int, list[Provenance]] = {}
    counters: list[InstrumentationCounters] = []
    for sol in solutions:
        for g in sol.guards:
            lists.setdefault(g, []).extend(sol.lists.get(g, []))
            provenance.setdefault(g, []).extend(sol.provenance.get(g, []))
        counters.extend(sol.counters)
    return GuardSolution(guards=sorted(lists), lists=lists, provenance=provenance, counters=counters)


def retract_guards(
    t: Terrain,
    t_ext: Terrain,
    guards_ext: Iterable[int],
    *,
    witnesses: Iterable[int] | None = None,
) -> set[int]:
    """Replace guards on added wall vertices by original vertices.

    Works on extend(t) indices and returns indices of t. An added guard is
    replaced by the lowest original vertex seeing every witness no other
    guard sees; witnesses default to all original vertices.
    """
    guards = set(guards_ext)
    replacements = _retraction_map(t, t_ext, guards, witnesses)
    offset = original_index_offset(t)
    mapped = (replacements.get(g, g) for g in guards)
    return {g - offset for g in mapped if g is not None}


def _retraction_map(
    t: Terrain, t_ext: Terrain, guards: set[int], witnesses: Iterable[int] | None
) -> dict[int, int | None]:
    """Added guard -> replacement original vertex (None when nothing is left to cover)."""
    offset = original_index_offset(t)
    originals = range(offset, offset + len(t))
    universe = set(originals) if witnesses is None else set(witnesses) & set(originals)
    added = set(range(len(t_ext))) - set(originals)

    replacements: dict[int, int | None] = {}
    current = set(guards)
    for a in sorted(guards & added):
        others = current - {a}
        seen_by_others: set[int] = set()
        for g in others:
            seen_by_others |= visible_from(t_ext, g)
        exclusive = (visible_from(t_ext, a) & universe) - seen_by_others
        current.discard(a)
        if not exclusive:
            logger.info("Added guard %d covers nothing on its own; dropped", a)
            replacements[a] = None
            continue
        for candidate in originals:
            if exclusive <= visible_from(t_ext, candidate):
                logger.info("Retracted added guard %d to vertex %d", a, candidate)
                replacements[a] = candidate
                current.add(candidate)
                break
        else:
            raise RetractionError(
                f"no original vertex sees witnesses {sorted(exclusive)} of added guard {a}"
            )
    return replacements


def _finish(t: Terrain, t_ext: Terrain, sol: GuardSolution) -> GuardSolution:
    """Retract added guards, reassign their witnesses and un-shift indices."""
    replacements = _retraction_map(t, t_ext, set(sol.guards), None)
    offset = original_index_offset(t)
    n = len(t)

    lists: dict[int, list[int]] = {}
    provenance: dict[int, list[Provenance]] = {}
    moved: list[int] = []
    substitutes = {r for r in replacements.values() if r is not None}
    for g in sol.guards:
        target = replacements.get(g, g)
        originals = [w for w in sol.lists.get(g, []) if 0 <= w - offset < n]
        if target is None:
            moved.extend(originals)
            continue
        if g in replacements:
            provenance.setdefault(target, []).append(Provenance.RETRACTION)
            lists.setdefault(target, [])
            moved.extend(originals)
        else:
            lists.setdefault(target, []).extend(originals)
            provenance.setdefault(target, []).extend(sol.provenance.get(g, []))

    for w in moved:
        for g in sorted(lists, key=lambda g: (g not in substitutes, g)):
            if w in visible_from(t_ext, g):
                lists[g].append(w)
                break
        else:
            raise RetractionError(f"witness {w} lost its guard during retraction")

    kept = sorted(g for g, ws in lists.items() if ws)
    return GuardSolution(
        guards=[g - offset for g in kept],
        lists={g - offset: [w - offset for w in lists[g]] for g in kept},
        provenance={g - offset: provenance[g] for g in kept},
        counters=sol.counters,
    )


def approx_guard_set(t: Terrain, *, trace: SweepTrace | None = None) -> GuardSolution:
    """Guard set for all vertices of t with at most twice the optimum size."""
    t_ext = _prepare(t)
    left = run_left_sweep(t_ext, trace=trace)
    right = _right_sweep(t_ext, trace)
    result = _finish(t, t_ext, merge_solutions(left, right))
    logger.info("Approximate guard set of %d vertices: %d guards", len(t), result.size)
    return result


async def approx_guard_set_async(t: Terrain) -> GuardSolution:
    """approx_guard_set with both sweeps run in worker threads."""
    t_ext = _prepare(t)
    if get_settings().concurrent_sweeps:
        left, right = await asyncio.gather(
            asyncio.to_thread(run_left_sweep, t_ext),
            asyncio.to_thread(_right_sweep, t_ext),
        )
    else:
        left = run_left_sweep(t_ext)
        right = _right_sweep(t_ext)
    return _finish(t, t_ext, merge_solutions(left, right))


def one_sided_guard_set(t: Terrain, side: Side | str, *, trace: SweepTrace | None = None) -> GuardSolution:
    """Optimal reflex guards for the left (or right) convex vertices only."""
    side = Side(side)
    if side is Side.BOTH:
        return approx_guard_set(t, trace=trace)
    t_ext = _prepare(t)
    sol = run_left_sweep(t_ext, trace=trace) if side is Side.LEFT else _right_sweep(t_ext, trace)
    return _finish(t, t_ext, sol)


def verify_solution(t: Terrain, sol: GuardSolution | Iterable[int]) -> CoverageReport:
    """Oracle check that the guards see every vertex of t."""
    guards = sorted(sol.guards if isinstance(sol, GuardSolution) else set(sol))
    covered: set[int] = set()
    for g in guards:
        if not 0 <= g < len(t):
            raise IndexError(f"guard {g} out of range for terrain of {len(t)} vertices")
        covered |= visible_from(t, g)
    uncovered = sorted(set(range(len(t))) - covered)
    if uncovered:
        logger.warning("Guards %s leave %d vertices uncovered", guards, len(uncovered))
    return CoverageReport(covered=not uncovered, guards=guards, uncovered=uncovered)
