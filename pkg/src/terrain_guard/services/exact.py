"""Brute-force minimum guard sets, the optimality oracle for small terrains."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from ..config import get_settings
from ..core.terrain import Terrain
from ..models.reports import ReductionReport
from .sweep import SweepConsistencyError, extract_first_witnesses, run_left_sweep
from .visibility import visible_from

logger = logging.getLogger(__name__)


class ExactCapExceeded(ValueError):
    """More candidates than the exhaustive search is allowed to enumerate."""


class InfeasibleInstance(ValueError):
    """Some witness is seen by no candidate."""

    def __init__(self, uncovered: list[int]):
        self.uncovered = uncovered
        super().__init__(f"witnesses {uncovered} are not seen by any candidate")


@dataclass(frozen=True, slots=True)
class CoverInstance:
    """Candidates with their coverage as bitmasks over witness positions."""

    candidates: tuple[int, ...]
    witnesses: tuple[int, ...]
    coverage: tuple[int, ...]

    @property
    def full(self) -> int:
        return (1 << len(self.witnesses)) - 1

    @classmethod
    def build(cls, t: Terrain, candidates: Iterable[int], witnesses: Iterable[int]) -> CoverInstance:
        cands = tuple(sorted(set(candidates)))
        wits = tuple(sorted(set(witnesses)))
        position = {w: i for i, w in enumerate(wits)}
        coverage = []
        for c in cands:
            mask = 0
            for q in visible_from(t, c):
                i = position.get(q)
                if i is not None:
                    mask |= 1 << i
            coverage.append(mask)
        return cls(cands, wits, tuple(coverage))

    def uncovered(self) -> list[int]:
        union = 0
        for mask in self.coverage:
            union |= mask
        return [w for i, w in enumerate(self.witnesses) if not union >> i & 1]


def _undominated(masks: list[int]) -> list[int]:
    """Masks with strict supersets (or equal earlier masks) removed."""
    keep = []
    for i, a in enumerate(masks):
        dominated = False
        for j, b in enumerate(masks):
            if i == j or a | b != b:
                continue
            if a != b or j < i:
                dominated = True
                break
        if not dominated:
            keep.append(a)
    return keep


def _optimum_size(masks: list[int], full: int) -> int:
    """Smallest number of masks whose union is `full` (iterative deepening)."""
    masks = _undominated(masks)

    def cover(covered: int, budget: int) -> bool:
        if covered == full:
            return True
        if budget == 0:
            return False
        missing = full & ~covered
        low = missing & -missing
        # Some chosen mask must contain the lowest missing witness.
        return any(m & low and cover(covered | m, budget - 1) for m in masks)

    k = 0
    while not cover(0, k):
        k += 1
    return k


def _first_cover(masks: list[int], full: int, k: int) -> list[int]:
    """Lexicographically first k positions whose masks cover `full`."""
    n = len(masks)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]

    chosen: list[int] = []

    def search(start: int, covered: int) -> bool:
        if covered == full:
            return True
        if len(chosen) == k:
            return False
        for i in range(start, n):
            if covered | suffix[i] != full:
                return False
            chosen.append(i)
            if search(i + 1, covered | masks[i]):
                return True
            chosen.pop()
        return False

    if not search(0, 0):
        raise RuntimeError(f"no cover of size {k} found although one exists")
    return chosen


def minimum_guard_set(
    t: Terrain, candidates: Iterable[int], witnesses: Iterable[int], *, cap: int | None = None
) -> set[int]:
    """Minimum-cardinality subset of candidates seeing every witness.

    Ties are broken by the lexicographically smallest sorted index tuple.
    """
    instance = CoverInstance.build(t, candidates, witnesses)
    cap = get_settings().exact_candidate_cap if cap is None else cap
    if len(instance.candidates) > cap:
        raise ExactCapExceeded(f"{len(instance.candidates)} candidates exceed the exact cap of {cap}")
    if not instance.witnesses:
        return set()
    uncovered = instance.uncovered()
    if uncovered:
        raise InfeasibleInstance(uncovered)

    masks = list(instance.coverage)
    k = _optimum_size(masks, instance.full)
    picked = {instance.candidates[i] for i in _first_cover(masks, instance.full, k)}
    logger.debug("Exact optimum %d over %d candidates: %s", k, len(instance.candidates), sorted(picked))
    return picked


def verify_guarding(t: Terrain, guards: Iterable[int], witnesses: Iterable[int]) -> bool:
    """True iff every witness is seen by some guard."""
    remaining = set(witnesses)
    for g in guards:
        if not remaining:
            break
        remaining -= visible_from(t, g)
    return not remaining


def reduction_check(t: Terrain, *, cap: int | None = None) -> ReductionReport:
    """Check on one instance that reflex guards for the convex vertices suffice.

    (a) a minimum cover of the convex vertices by reflex vertices guards all
    vertices; (b) allowing any vertex as a guard does not beat reflex-only
    guards for the convex vertices.
    """
    reflex, convex = t.reflex, t.convex
    cover = minimum_guard_set(t, reflex, convex, cap=cap)
    any_cover = minimum_guard_set(t, range(len(t)), convex, cap=cap)
    return ReductionReport(
        convex_cover=sorted(cover),
        convex_cover_guards_all=verify_guarding(t, cover, range(len(t))),
        optimum_any_candidates=len(any_cover),
        optimum_reflex_candidates=len(cover),
    )


def lower_bound_certificate(t: Terrain) -> set[int]:
    """First witnesses of a left sweep, checked to be pairwise independent.

    No reflex vertex sees two of them, so any guard set for the left convex
    vertices has at least as many guards as the returned set has members.
    """
    first = extract_first_witnesses(run_left_sweep(t))
    for r in t.reflex:
        shared = first & visible_from(t, r)
        if len(shared) > 1:
            raise SweepConsistencyError(f"reflex vertex {r} sees first witnesses {sorted(shared)}")
    return first
