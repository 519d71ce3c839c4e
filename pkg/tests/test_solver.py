"""Tests for the approximation pipeline, retraction and coverage checks."""

from unittest.mock import patch

import pytest

from terrain_guard.config import Settings
from terrain_guard.core.terrain import Terrain, extend
from terrain_guard.models.params import EndStyle
from terrain_guard.models.solution import Provenance
from terrain_guard.services.exact import minimum_guard_set
from terrain_guard.services.solver import (
    RetractionError,
    Side,
    approx_guard_set,
    approx_guard_set_async,
    one_sided_guard_set,
    retract_guards,
    verify_solution,
)


class TestApproxGuardSet:
    def test_e1_union_of_both_sweeps(self, e1):
        sol = approx_guard_set(e1)
        assert sol.guards == [2, 7]
        assert sol.lists == {2: [4, 6], 7: [3, 1]}
        assert sol.provenance == {2: [Provenance.RIGHT_SWEEP], 7: [Provenance.LEFT_SWEEP]}
        assert len(sol.counters) == 2

    def test_e2_through_extension(self, e2):
        sol = approx_guard_set(e2)
        assert sol.guards == [4]
        assert sol.lists == {4: [2, 0, 3, 5]}
        assert sol.provenance[4] == [Provenance.LEFT_SWEEP, Provenance.RIGHT_SWEEP]

    def test_single_wall(self):
        sol = approx_guard_set(Terrain.from_points([(0, 0), (0, 5)]))
        assert sol.guards == [1]
        assert verify_solution(Terrain.from_points([(0, 0), (0, 5)]), sol).covered

    def test_deterministic(self, t3):
        assert approx_guard_set(t3) == approx_guard_set(t3)


class TestOneSided:
    def test_e1_sides(self, e1):
        assert one_sided_guard_set(e1, Side.LEFT).lists == {7: [3, 1]}
        assert one_sided_guard_set(e1, "right").lists == {2: [4, 6]}
        assert one_sided_guard_set(e1, "both").guards == [2, 7]

    def test_flat_end_vertices_are_one_sided_witnesses(self, e2):
        # The extension walls make the flat start left convex and the flat end right convex.
        assert one_sided_guard_set(e2, Side.LEFT).lists == {4: [2, 0]}
        assert one_sided_guard_set(e2, Side.RIGHT).lists == {4: [3, 5]}

    def test_unknown_side(self, e1):
        with pytest.raises(ValueError):
            one_sided_guard_set(e1, "up")


class TestAsync:
    async def test_matches_sequential(self, e1, e2):
        for t in (e1, e2):
            assert await approx_guard_set_async(t) == approx_guard_set(t)

    async def test_without_threads(self, e2):
        with patch("terrain_guard.services.solver.get_settings", return_value=Settings(concurrent_sweeps=False)):
            sol = await approx_guard_set_async(e2)
        assert sol.guards == [4]


class TestRetraction:
    def test_added_guard_replaced(self, e2):
        t_ext, _, _ = extend(e2)
        # (84,29) alone sees (84,28); (56,28) is the lowest original vertex that does.
        assert retract_guards(e2, t_ext, {2, 7}) == {1, 4}

    def test_without_added_guards_only_shifts(self, e2):
        t_ext, _, _ = extend(e2)
        assert retract_guards(e2, t_ext, [2, 5]) == {1, 4}

    def test_vertical_terrain_is_identity(self, e1):
        assert retract_guards(e1, e1, {2, 7}) == {2, 7}

    def test_missing_replacement_fails_loudly(self, e2):
        t_ext, _, _ = extend(e2)
        with patch("terrain_guard.services.solver.visible_from", side_effect=lambda t, p: {p} if p != 7 else {5, 6, 7}):
            with pytest.raises(RetractionError):
                retract_guards(e2, t_ext, {7})


class TestVerifySolution:
    def test_full_coverage(self, e1):
        report = verify_solution(e1, [2, 7])
        assert report.covered
        assert report.uncovered == []

    def test_v7_misses_v4(self, e1):
        report = verify_solution(e1, [7])
        assert not report.covered
        assert report.uncovered == [4]

    def test_no_guards(self, e1):
        assert verify_solution(e1, []).uncovered == list(range(8))


class TestProperties:
    @pytest.mark.parametrize("ends", list(EndStyle))
    def test_covers_every_vertex(self, corpus, ends):
        for t in corpus(100, steps=30, max_run=4, max_jump=5, ends=ends):
            assert verify_solution(t, approx_guard_set(t)).covered, list(t)

    def test_within_twice_the_optimum(self, corpus):
        for t in corpus(60, steps=9, max_run=3, max_jump=4, ends=EndStyle.MIXED):
            opt = len(minimum_guard_set(t, range(len(t)), range(len(t)), cap=len(t)))
            size = approx_guard_set(t).size
            assert opt <= size <= 2 * opt, list(t)

    def test_one_sided_sweeps_are_optimal(self, corpus):
        for t in corpus(100, steps=10, max_run=4, max_jump=5):
            assert one_sided_guard_set(t, Side.LEFT).size == len(minimum_guard_set(t, t.reflex, t.left_convex))
            assert one_sided_guard_set(t, Side.RIGHT).size == len(minimum_guard_set(t, t.reflex, t.right_convex))

    @pytest.mark.slow
    def test_coverage_corpus(self, corpus, slow_seeds):
        for ends in EndStyle:
            for t in corpus(slow_seeds, steps=99, max_run=6, max_jump=9, ends=ends, first_seed=20_000):
                assert verify_solution(t, approx_guard_set(t)).covered, list(t)

    @pytest.mark.slow
    def test_optimality_corpus(self, corpus, slow_seeds):
        for t in corpus(slow_seeds, steps=19, max_run=4, max_jump=6, first_seed=30_000):
            left = minimum_guard_set(t, t.reflex, t.left_convex, cap=len(t))
            right = minimum_guard_set(t, t.reflex, t.right_convex, cap=len(t))
            assert one_sided_guard_set(t, Side.LEFT).size == len(left)
            assert one_sided_guard_set(t, Side.RIGHT).size == len(right)

    @pytest.mark.slow
    def test_ratio_corpus(self, corpus, slow_seeds):
        for t in corpus(slow_seeds // 2, steps=15, max_run=4, max_jump=6, first_seed=40_000):
            opt = len(minimum_guard_set(t, range(len(t)), range(len(t)), cap=len(t)))
            assert opt <= approx_guard_set(t).size <= 2 * opt, list(t)
