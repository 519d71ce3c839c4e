"""Right-to-left sweep computing an optimal guard set for left convex witnesses.

The sweep keeps a modified stack (MS) of candidate guards, each with the
obstacle defining its current shadow ray, a heap of interior crossings of
rays of MS-adjacent entries, and an upper-hull stack for right horizons.
Every left convex vertex ends up in the witness list L(g) of exactly one
reflex vertex g; the guards are the vertices with non-empty lists.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import StrEnum
from typing import NamedTuple

from ..config import get_settings
from ..core.geometry import Point, Rational, Side, point_on_ray, ray_intersection, side_of_line
from ..core.terrain import Terrain, height_range_at
from ..models.solution import GuardSolution, InstrumentationCounters, Provenance
from . import visibility
from .hull import UpperHullStack

logger = logging.getLogger(__name__)

TRACE_HEADER = "# sweep-trace v1"


class SweepConsistencyError(RuntimeError):
    """An internal invariant of the sweep was violated."""


class EventKind(StrEnum):
    LC = "LC"
    RC = "RC"
    LR = "LR"
    RR = "RR"
    INTERSECTION = "X"


@dataclass(eq=False, slots=True)
class MSEntry:
    """A reflex vertex in the modified stack with its current shadow ray."""

    vertex: int
    origin: Point
    through: Point
    obstacle: int | None
    dummy: bool = False
    above: MSEntry | None = None  # toward the top (left, lower)
    below: MSEntry | None = None  # toward the bottom (right, higher)
    alive: bool = True
    pair_event: IntersectionEvent | None = None  # crossing with `below`
    inverted: bool = False  # ray order with a neighbour flipped under the terrain

    @property
    def ray(self) -> tuple[Point, Point]:
        return self.origin, self.through

    @property
    def vertical(self) -> bool:
        return self.origin.x == self.through.x

    def label(self) -> str:
        obstacle = "-" if self.obstacle is None else str(self.obstacle)
        return f"{self.vertex}:{obstacle}{'*' if self.dummy else ''}"


@dataclass(eq=False, slots=True)
class IntersectionEvent:
    point: Point
    upper: MSEntry
    lower: MSEntry
    seq: int


class Event(NamedTuple):
    kind: EventKind
    x: Rational
    vertex: int | None = None
    intersection: IntersectionEvent | None = None

    def label(self) -> str:
        if self.intersection is not None:
            p = self.intersection.point
            return f"({p.x},{p.y})"
        return str(self.vertex)


class ModifiedStack:
    """Doubly linked stack supporting deletion anywhere by handle."""

    def __init__(self) -> None:
        self.top: MSEntry | None = None
        self.size = 0
        self.dirty: dict[MSEntry, None] = {}

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[MSEntry]:
        e = self.top
        while e is not None:
            yield e
            e = e.below

    def push(self, entry: MSEntry) -> None:
        entry.below = self.top
        entry.above = None
        if self.top is not None:
            self.top.above = entry
        self.top = entry
        self.size += 1
        self.dirty[entry] = None

    def remove(self, entry: MSEntry) -> None:
        if not entry.alive:
            raise SweepConsistencyError(f"entry {entry.label()} removed twice")
        a, b = entry.above, entry.below
        if a is not None:
            a.below = b
            self.dirty[a] = None
        else:
            self.top = b
        if b is not None:
            b.above = a
        entry.alive = False
        entry.above = entry.below = None
        self.size -= 1


class SweepTrace:
    """Line-oriented, versioned event trace."""

    def __init__(self) -> None:
        self.lines: list[str] = [TRACE_HEADER]

    def begin(self, n: int) -> None:
        self.lines.append(f"# sweep n={n}")

    def record(self, seq: int, event: Event, ms: ModifiedStack, heap_size: int) -> None:
        entries = ",".join(e.label() for e in ms)
        self.lines.append(f"{seq} {event.kind} {event.label()} ms=[{entries}] h={heap_size}")

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


@dataclass
class SweepState:
    """All mutable state of one left sweep over one terrain."""

    terrain: Terrain
    check_invariants: bool = False
    cross_check: bool = False
    trace: SweepTrace | None = None
    ms: ModifiedStack = field(default_factory=ModifiedStack)
    heap: list[tuple[Rational, Rational, int, IntersectionEvent]] = field(default_factory=list)
    live_events: int = 0
    lists: dict[int, list[int]] = field(default_factory=dict)
    counters: InstrumentationCounters = field(default_factory=InstrumentationCounters)
    sweep_x: Rational | None = None
    disagreements: list[tuple[int, int, bool]] = field(default_factory=list)
    horizons: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        t = self.terrain
        if not t.has_vertical_ends:
            raise ValueError("the sweep needs a terrain with vertical first and last edges; extend it first")
        self.cursor = len(t) - 1
        self._points = t.points
        self._xs = t.xs
        self._kinds = [EventKind(c.value) for c in t.classes]
        self.hull = UpperHullStack(t)
        self._seq = itertools.count()
        self._events = 0
        self._nonempty = 0
        self._last_k_plus_t = 0
        self._handlers = {
            EventKind.LC: self._handle_left_convex,
            EventKind.RC: self._handle_right_convex,
            EventKind.LR: self._handle_left_reflex,
            EventKind.RR: self._handle_right_reflex,
            EventKind.INTERSECTION: self._handle_intersection,
        }
        if self.trace is not None:
            self.trace.begin(len(t))

    # -- lists ------------------------------------------------------------------

    def _append(self, guard: int, witness: int) -> None:
        lst = self.lists.setdefault(guard, [])
        if not lst:
            self._nonempty += 1
        lst.append(witness)

    def _take_single(self, guard: int) -> int:
        witness = self.lists[guard].pop()
        self._nonempty -= 1
        return witness

    # -- MS helpers ---------------------------------------------------------------

    def _new_entry(self, vertex: int, obstacle: int | None, dummy: bool = False) -> MSEntry:
        t = self.terrain
        origin = t[vertex]
        if obstacle is None:
            through = Point(origin.x - 1, origin.y)
        else:
            through = t[obstacle]
        return MSEntry(vertex=vertex, origin=origin, through=through, obstacle=obstacle, dummy=dummy)

    def _push(self, entry: MSEntry) -> None:
        self.ms.push(entry)
        self.counters.ms_pushes += 1
        self.counters.max_ms = max(self.counters.max_ms, len(self.ms))

    def _drop(self, entry: MSEntry, *, popped: bool) -> None:
        self._forget_pair(entry)
        if entry.inverted:
            # Its neighbours become adjacent with no order guarantee between them.
            for neighbour in (entry.above, entry.below):
                if neighbour is not None:
                    neighbour.inverted = True
        self.ms.remove(entry)
        if popped:
            self.counters.ms_pops += 1
        else:
            self.counters.ms_deletes += 1

    def _pop(self) -> MSEntry:
        entry = self.ms.top
        if entry is None:
            raise SweepConsistencyError("pop from an empty modified stack")
        self._drop(entry, popped=True)
        return entry

    def _forget_pair(self, entry: MSEntry) -> None:
        if entry.pair_event is not None:
            entry.pair_event = None
            self.live_events -= 1
            self.counters.heap_deletes += 1

    def _refresh_pairs(self) -> None:
        """Recompute crossings for every MS-adjacent pair touched by the last event."""
        dirty = self.ms.dirty
        self.ms.dirty = {}
        for upper in dirty:
            if not upper.alive:
                continue
            self._forget_pair(upper)
            lower = upper.below
            if lower is None:
                continue
            point = ray_intersection(upper.ray, lower.ray)
            if point is None or point.x > self.sweep_x:
                # A pair that crossed under the terrain keeps that crossing, now right of the sweep line.
                if point is not None and self.check_invariants and not (upper.inverted or lower.inverted):
                    raise SweepConsistencyError(
                        f"rays of {upper.label()} and {lower.label()} cross at {point}, "
                        f"right of the sweep line x={self.sweep_x}"
                    )
                continue
            event = IntersectionEvent(point, upper, lower, next(self._seq))
            heapq.heappush(self.heap, (-point.x, -point.y, event.seq, event))
            upper.pair_event = event
            self.live_events += 1
            self.counters.heap_inserts += 1
        self.counters.max_heap = max(self.counters.max_heap, self.live_events)

    # -- visibility through rays ----------------------------------------------------

    def ms_sees(self, entry: MSEntry, w: int) -> bool:
        """O(1) test: w is on or above the support line of entry's ray."""
        p = self._points[w]
        if entry.vertical:
            result = p.y >= entry.through.y
        else:
            result = side_of_line(p, entry.origin, entry.through) is not Side.BELOW
        if self.cross_check:
            truth = visibility.sees(self.terrain, entry.vertex, w)
            if truth != result:
                logger.warning(
                    "Ray test of %s on vertex %d says %s, oracle says %s", entry.label(), w, result, truth
                )
                self.disagreements.append((entry.vertex, w, result))
        return result

    # -- event queue ----------------------------------------------------------------

    def _peek_intersection(self) -> IntersectionEvent | None:
        heap = self.heap
        while heap:
            event = heap[0][3]
            if event.upper.alive and event.upper.pair_event is event:
                return event
            heapq.heappop(heap)
            self.counters.stale_events += 1
        return None

    def next_event(self) -> Event | None:
        """The rightmost pending vertex or intersection; intersections win ties."""
        pending = self._peek_intersection()
        vertex_x = self._xs[self.cursor] if self.cursor >= 0 else None
        if pending is not None and (vertex_x is None or pending.point.x >= vertex_x):
            heapq.heappop(self.heap)
            pending.upper.pair_event = None
            self.live_events -= 1
            self.counters.heap_pops += 1
            return Event(EventKind.INTERSECTION, pending.point.x, intersection=pending)
        if vertex_x is None:
            return None
        v = self.cursor
        self.cursor -= 1
        return Event(self._kinds[v], vertex_x, vertex=v)

    def _next_abscissa(self):
        pending = self._peek_intersection()
        xs = []
        if pending is not None:
            xs.append(pending.point.x)
        if self.cursor >= 0:
            xs.append(self.terrain.xs[self.cursor])
        return max(xs) if xs else None

    # -- handlers -------------------------------------------------------------------

    def process_event(self, event: Event) -> None:
        self.sweep_x = event.x
        if event.vertex is not None:
            horizon = self.hull.push_vertex(event.vertex)
            if horizon is not None:
                self.horizons[event.vertex] = horizon
        self._handlers[event.kind](event)
        self._refresh_pairs()
        self._events += 1
        if self.trace is not None:
            self.trace.record(self._events, event, self.ms, self.live_events)
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("event %s %s ms=%d h=%d", event.kind, event.label(), len(self.ms), self.live_events)
        if self.check_invariants:
            self._check_invariants(event)

    def _handle_left_convex(self, event: Event) -> None:
        self.counters.lc_events += 1
        v = event.vertex
        horizon = self.horizons[v]
        while self.ms.top is not None:
            top = self.ms.top
            if self.ms_sees(top, v) or top.vertex > horizon:
                break
            self._pop()
        top = self.ms.top
        if top is not None and self.ms_sees(top, v):
            self._append(top.vertex, v)
            return
        self._push(self._new_entry(horizon, v, dummy=True))
        self._append(horizon, v)

    def _handle_right_convex(self, event: Event) -> None:
        self.counters.rc_events += 1

    def _handle_left_reflex(self, event: Event) -> None:
        self.counters.lr_events += 1
        v = event.vertex
        last_seer: MSEntry | None = None
        while self.ms.top is not None and self.ms_sees(self.ms.top, v):
            last_seer = self._pop()
        if last_seer is not None:
            entry = self._new_entry(last_seer.vertex, v)
            entry.inverted = last_seer.inverted
            self._push(entry)

    def _handle_right_reflex(self, event: Event) -> None:
        self.counters.rr_events += 1
        v = event.vertex
        ys = self.terrain.ys
        vy = ys[v]
        u = self.ms.top
        while self.ms.top is not None and ys[self.ms.top.vertex] < vy:
            self._pop()
        if u is not None and ys[u.vertex] < vy and len(self.lists.get(u.vertex, ())) == 1:
            self._append(v, self._take_single(u.vertex))
            obstacle = v - 1 if v > 0 else None
            self._push(self._new_entry(v, obstacle))

        seers: list[MSEntry] = []
        entry = self.ms.top
        while entry is not None and self.ms_sees(entry, v):
            seers.append(entry)
            entry = entry.below
        for seer in seers[:-1]:
            self._drop(seer, popped=False)

    def _handle_intersection(self, event: Event) -> None:
        crossing = event.intersection
        point = crossing.point
        t = self.terrain
        if point.x < t.xs[0] or point.y < height_range_at(t, point.x)[0]:
            self.counters.intersections_discarded += 1
            crossing.upper.inverted = crossing.lower.inverted = True
            return
        self.counters.intersection_events += 1

        # Rays through the point are consecutive in MS around the crossing pair.
        through = [crossing.upper]
        e = crossing.upper.above
        while e is not None and point_on_ray(point, e.origin, e.through):
            through.insert(0, e)
            e = e.above
        e = crossing.upper.below
        while e is not None and point_on_ray(point, e.origin, e.through):
            through.append(e)
            e = e.below
        for entry in through[:-1]:
            self._drop(entry, popped=False)

    # -- invariants -------------------------------------------------------------------

    def _check_invariants(self, event: Event) -> None:
        where = f"after event {event.kind} {event.label()}"
        entries = list(self.ms)
        seen: set[int] = set()
        prev: MSEntry | None = None
        with_list = 0
        for entry in entries:
            if entry.vertex in seen:
                raise SweepConsistencyError(f"{where}: vertex {entry.vertex} appears twice in MS")
            seen.add(entry.vertex)
            if self.lists.get(entry.vertex):
                with_list += 1
            o, b = entry.origin, entry.through
            if b.y > o.y or b.x > o.x:
                raise SweepConsistencyError(f"{where}: ray of {entry.label()} has negative slope")
            if prev is not None:
                if not (o.x > prev.origin.x and o.y >= prev.origin.y):
                    raise SweepConsistencyError(f"{where}: MS out of order at {prev.label()} / {entry.label()}")
            prev = entry

        if self.live_events >= max(1, len(self.ms)):
            raise SweepConsistencyError(f"{where}: heap holds {self.live_events} crossings for {len(self.ms)} entries")

        k_plus_t = len(self.ms) + (self._nonempty - with_list)
        if k_plus_t < self._last_k_plus_t:
            raise SweepConsistencyError(f"{where}: k + t decreased to {k_plus_t}")
        self._last_k_plus_t = k_plus_t

        next_x = self._next_abscissa()
        if next_x is not None:
            for entry in entries:
                lower = entry.below
                if lower is None or entry.inverted or lower.inverted:
                    continue
                point = ray_intersection(entry.ray, lower.ray)
                if point is not None and point.x > next_x:
                    raise SweepConsistencyError(
                        f"{where}: rays of {entry.label()} and {lower.label()} cross at {point}, "
                        f"right of the next event x={next_x}"
                    )

    # -- driver -------------------------------------------------------------------------

    def run(self) -> GuardSolution:
        # The loop ends with the last vertex; later crossings cannot matter.
        while self.cursor >= 0:
            event = self.next_event()
            self.process_event(event)
        self.counters.hull_pops = self.hull.pops
        if self.counters.intersection_events > self._nonempty and self.check_invariants:
            raise SweepConsistencyError(
                f"{self.counters.intersection_events} intersection events exceed {self._nonempty} guards"
            )
        guards = sorted(g for g, lst in self.lists.items() if lst)
        self.counters.final_guards = len(guards)
        logger.info(
            "Left sweep over %d vertices: %d guards, %d intersection events",
            len(self.terrain),
            len(guards),
            self.counters.intersection_events,
        )
        return GuardSolution(
            guards=guards,
            lists={g: list(self.lists[g]) for g in guards},
            provenance={g: [Provenance.LEFT_SWEEP] for g in guards},
            counters=[self.counters],
        )


def run_left_sweep(
    t: Terrain,
    *,
    check_invariants: bool | None = None,
    cross_check: bool | None = None,
    trace: SweepTrace | None = None,
) -> GuardSolution:
    """Optimal guard set among reflex vertices for all left convex vertices."""
    settings = get_settings()
    state = SweepState(
        t,
        check_invariants=settings.check_invariants if check_invariants is None else check_invariants,
        cross_check=settings.cross_check_visibility if cross_check is None else cross_check,
        trace=trace,
    )
    solution = state.run()
    if state.disagreements:
        logger.warning("%d ray tests disagreed with the visibility oracle", len(state.disagreements))
    return solution


def extract_first_witnesses(solution: GuardSolution) -> set[int]:
    """F: the first witness of every guard's list."""
    first = set()
    for g in solution.guards:
        lst = solution.lists.get(g)
        if not lst:
            raise SweepConsistencyError(f"guard {g} has an empty witness list")
        first.add(lst[0])
    return first
