"""Tests for right horizons via the upper-hull stack."""

import pytest

from terrain_guard.core.terrain import Terrain
from terrain_guard.services.hull import UpperHullStack, right_horizons
from terrain_guard.services.visibility import right_horizon_bruteforce


def _full_sweep(t: Terrain) -> UpperHullStack:
    hull = UpperHullStack(t)
    for v in range(len(t) - 1, -1, -1):
        hull.push_vertex(v)
    return hull


class TestRightHorizons:
    def test_e1(self, e1):
        assert right_horizons(e1) == {1: 7, 3: 7}

    def test_mirrored_e1(self, mirror_e1):
        # (0,3) sees (-7,1) past (-2,2), so it is the horizon of index 1.
        assert right_horizons(mirror_e1) == {3: 5, 1: 7}

    def test_t3(self, t3):
        assert right_horizons(t3) == {9: 11, 3: 5}

    def test_matches_bruteforce(self, corpus):
        for t in corpus(200, steps=12):
            expected = {v: right_horizon_bruteforce(t, v) for v in t.left_convex}
            assert right_horizons(t) == expected, list(t)

    @pytest.mark.slow
    def test_matches_bruteforce_corpus(self, corpus, slow_seeds):
        for t in corpus(slow_seeds, steps=99, max_run=6, max_jump=9, first_seed=50_000):
            expected = {v: right_horizon_bruteforce(t, v) for v in t.left_convex}
            assert right_horizons(t) == expected, list(t)
            assert _full_sweep(t).pops <= len(t)


class TestUpperHullStack:
    def test_hull_of_e1_suffix(self, e1):
        hull = UpperHullStack(e1)
        for v in range(7, 2, -1):
            hull.push_vertex(v)
        assert hull.contents == [7, 3]
        assert hull.fallbacks == 0

    def test_out_of_order_push_rejected(self, e1):
        hull = UpperHullStack(e1)
        hull.push_vertex(5)
        with pytest.raises(ValueError):
            hull.push_vertex(6)

    def test_only_left_convex_get_a_horizon(self, e1):
        hull = UpperHullStack(e1)
        results = [hull.push_vertex(v) for v in range(7, -1, -1)]
        assert results == [None, None, None, None, 7, None, 7, None]

    def test_each_vertex_is_popped_at_most_once(self, corpus):
        for t in corpus(100, steps=30, max_run=6, max_jump=9):
            hull = _full_sweep(t)
            assert hull.pops <= len(t)
            assert hull.fallbacks == 0
