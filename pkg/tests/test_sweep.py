"""Tests for the right-to-left sweep."""

from fractions import Fraction

import pytest

from terrain_guard.core.geometry import Point
from terrain_guard.core.terrain import Terrain
from terrain_guard.models.params import GenParams
from terrain_guard.services.gen import random_terrain
from terrain_guard.services.sweep import (
    TRACE_HEADER,
    Event,
    EventKind,
    IntersectionEvent,
    ModifiedStack,
    MSEntry,
    SweepConsistencyError,
    SweepState,
    SweepTrace,
    extract_first_witnesses,
    run_left_sweep,
)
from terrain_guard.services.visibility import sees, visibility_matrix


def _instrumented_run(t: Terrain) -> SweepState:
    state = SweepState(t, check_invariants=True, cross_check=True)
    state.run()
    return state


def _forgotten_witnesses(t: Terrain) -> list[int]:
    """LC vertices seen by some earlier MS entry but by no entry when the sweep reaches them."""
    m = visibility_matrix(t, cap=len(t))
    state = SweepState(t)
    been_in_ms: set[int] = set()
    forgotten = []
    while state.cursor >= 0:
        event = state.next_event()
        v = event.vertex
        if event.kind is EventKind.LC and any(m.sees(u, v) for u in been_in_ms):
            if not any(m.sees(e.vertex, v) for e in state.ms):
                forgotten.append(v)
        state.process_event(event)
        been_in_ms.update(e.vertex for e in state.ms)
    return forgotten


class TestFixtures:
    def test_e1(self, e1):
        sol = run_left_sweep(e1)
        assert sol.guards == [7]
        assert sol.lists == {7: [3, 1]}

    def test_mirrored_e1(self, mirror_e1):
        sol = run_left_sweep(mirror_e1)
        assert sol.guards == [5]
        assert sol.lists == {5: [3, 1]}

    def test_t3_fires_one_intersection(self, t3):
        sol = run_left_sweep(t3, check_invariants=True, cross_check=True)
        assert sol.lists == {2: [3], 11: [9]}
        counters = sol.counters[0]
        assert counters.intersection_events == 1
        assert counters.intersections_discarded == 0
        assert counters.final_guards == 2

    def test_falling_wall_guarded_by_its_top(self):
        sol = run_left_sweep(Terrain.from_points([(0, 5), (0, 0)]), check_invariants=True, cross_check=True)
        assert sol.lists == {0: [1]}

    def test_needs_vertical_ends(self, e2):
        with pytest.raises(ValueError):
            run_left_sweep(e2)


class TestEvents:
    def test_e1_step_by_step(self, e1):
        state = SweepState(e1)
        kinds = []
        while state.cursor > 3:
            event = state.next_event()
            kinds.append(event.kind)
            state.process_event(event)
        assert kinds == [EventKind.LR, EventKind.RC, EventKind.LR, EventKind.RC]
        assert len(state.ms) == 0

        state.process_event(state.next_event())  # v3, LC: pushes R(v3) = v7 with a dummy ray
        top = state.ms.top
        assert (top.vertex, top.obstacle, top.dummy) == (7, 3, True)
        assert state.lists == {7: [3]}

        state.process_event(state.next_event())  # v2, RR: v7 is the only seer
        assert [e.vertex for e in state.ms] == [7]

        state.process_event(state.next_event())  # v1, LC: seen through the ray
        assert state.lists == {7: [3, 1]}

    def test_ms_sees_through_dummy_ray(self, e1):
        state = SweepState(e1)
        entry = state._new_entry(7, 3, dummy=True)
        assert state.ms_sees(entry, 1)
        assert state.ms_sees(entry, 2)

    def test_horizontal_ray(self, t3):
        state = SweepState(t3)
        entry = state._new_entry(2, 1)
        assert state.ms_sees(entry, 1)
        assert not state.ms_sees(entry, 0)

    def test_intersection_before_vertex_at_t3(self, t3):
        state = SweepState(t3)
        seen = []
        while state.cursor >= 0:
            event = state.next_event()
            seen.append((event.kind, event.label()))
            state.process_event(event)
        assert seen[-3:] == [(EventKind.INTERSECTION, "(17/2,5)"), (EventKind.LR, "1"), (EventKind.RC, "0")]


class TestCrossings:
    @pytest.fixture
    def crossing_pair(self, t3):
        # Horizontal ray left from (10,5) meets the ray from (21,10) through (16,8) at (17/2, 5).
        state = SweepState(t3)
        upper, lower = state._new_entry(2, 1), state._new_entry(11, 7)
        state._push(lower)
        state._push(upper)
        return state, upper, lower

    def test_crossing_on_the_sweep_line_is_scheduled(self, crossing_pair):
        state, upper, _ = crossing_pair
        state.sweep_x = Fraction(17, 2)
        state._refresh_pairs()
        assert state.live_events == 1
        assert upper.pair_event.point == Point(Fraction(17, 2), 5)
        assert state.heap[0][3] is upper.pair_event

    def test_crossing_right_of_the_sweep_line_is_dropped(self, crossing_pair):
        state, upper, _ = crossing_pair
        state.sweep_x = 8
        state._refresh_pairs()
        assert state.live_events == 0
        assert upper.pair_event is None

    def test_crossing_right_of_the_sweep_line_is_an_error_when_checked(self, crossing_pair):
        state, _, _ = crossing_pair
        state.check_invariants = True
        state.sweep_x = 8
        with pytest.raises(SweepConsistencyError):
            state._refresh_pairs()

    def test_inverted_pair_is_exempt(self, crossing_pair):
        state, _, lower = crossing_pair
        state.check_invariants = True
        state.sweep_x = 8
        lower.inverted = True
        state._refresh_pairs()
        assert state.live_events == 0

    def test_crossing_under_the_terrain_inverts_only_its_pair(self, t3):
        state = SweepState(t3)
        bottom, lower, upper = (state._new_entry(v, o) for v, o in ((13, 12), (11, 7), (2, 1)))
        for entry in (bottom, lower, upper):
            state._push(entry)
        crossing = IntersectionEvent(Point(9, 4), upper, lower, seq=0)
        state._handle_intersection(Event(EventKind.INTERSECTION, 9, intersection=crossing))
        assert upper.inverted and lower.inverted
        assert not bottom.inverted
        assert state.counters.intersections_discarded == 1
        assert state.counters.intersection_events == 0
        assert len(state.ms) == 3

    def test_dropping_an_inverted_entry_inverts_its_neighbours(self, t3):
        state = SweepState(t3)
        bottom, middle, top = (state._new_entry(v, o) for v, o in ((11, 7), (5, 4), (2, 1)))
        for entry in (bottom, middle, top):
            state._push(entry)
        middle.inverted = True
        state._drop(middle, popped=False)
        assert [e.vertex for e in state.ms] == [2, 11]
        assert bottom.inverted and top.inverted


class TestModifiedStack:
    def _entry(self, e1, v):
        return MSEntry(vertex=v, origin=e1[v], through=e1[v - 1], obstacle=v - 1)

    def test_remove_relinks_neighbours(self, e1):
        ms = ModifiedStack()
        a, b, c = (self._entry(e1, v) for v in (7, 5, 2))
        for e in (a, b, c):
            ms.push(e)
        ms.remove(b)
        assert [e.vertex for e in ms] == [2, 7]
        assert c.below is a and a.above is c
        assert c in ms.dirty

    def test_double_remove_is_an_error(self, e1):
        ms = ModifiedStack()
        a = self._entry(e1, 7)
        ms.push(a)
        ms.remove(a)
        with pytest.raises(SweepConsistencyError):
            ms.remove(a)


class TestTrace:
    def test_header_and_event_lines(self, e1):
        trace = SweepTrace()
        run_left_sweep(e1, trace=trace)
        lines = trace.text().splitlines()
        assert lines[0] == TRACE_HEADER
        assert lines[1] == "# sweep n=8"
        assert len(lines) == 2 + len(e1)
        assert lines[-4] == "5 LC 3 ms=[7:3*] h=0"

    def test_deterministic(self, t3):
        first, second = SweepTrace(), SweepTrace()
        run_left_sweep(t3, trace=first)
        run_left_sweep(t3, trace=second)
        assert first.text() == second.text()


class TestProperties:
    def test_lists_partition_left_convex_vertices(self, corpus):
        for t in corpus(150, steps=12):
            sol = run_left_sweep(t)
            members = [w for g in sol.guards for w in sol.lists[g]]
            assert sorted(members) == t.left_convex
            for g in sol.guards:
                assert t.vertex_class(g).is_reflex
                assert all(sees(t, g, w) for w in sol.lists[g])

    def test_instrumented_runs(self, corpus, t3):
        for t in [t3, *corpus(150, steps=20, max_run=3, max_jump=6)]:
            state = _instrumented_run(t)
            assert state.disagreements == []
            c = state.counters
            assert c.intersection_events <= c.final_guards

    def test_seen_witnesses_stay_seen(self, corpus, t3):
        for t in [t3, *corpus(60, steps=12)]:
            assert _forgotten_witnesses(t) == [], list(t)

    def test_first_witnesses(self, e1, t3):
        assert extract_first_witnesses(run_left_sweep(e1)) == {3}
        assert extract_first_witnesses(run_left_sweep(t3)) == {3, 9}

    @pytest.mark.slow
    def test_instrumented_corpus(self, corpus, slow_seeds):
        for t in corpus(slow_seeds // 2, steps=60, max_run=5, max_jump=9, first_seed=10_000):
            assert _instrumented_run(t).disagreements == []

    @pytest.mark.slow
    def test_seen_witnesses_stay_seen_corpus(self, corpus, slow_seeds):
        for t in corpus(slow_seeds // 2, steps=19, max_run=4, max_jump=6, first_seed=30_000):
            assert _forgotten_witnesses(t) == [], list(t)

    @pytest.mark.slow
    def test_large_terrains_keep_invariants(self, corpus):
        for t in corpus(200, steps=4999, max_run=6, max_jump=12, first_seed=50_000):
            state = SweepState(t, check_invariants=True)
            state.run()
            assert state.counters.intersection_events <= state.counters.final_guards


class TestLargeTerrain:
    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [1, 2])
    def test_operation_counts_stay_linear(self, seed):
        t = random_terrain(GenParams(seed=seed, steps=50_000, max_run=10, max_jump=10))
        assert len(t) > 100_000
        counters = run_left_sweep(t, check_invariants=False, cross_check=False).counters[0]
        assert counters.vertex_events == len(t)
        assert counters.hull_pops <= len(t)
        assert counters.heap_pops + counters.stale_events <= counters.heap_inserts
        assert counters.intersection_events <= counters.final_guards
        assert counters.max_heap <= max(1, counters.max_ms)
