"""Pytest fixtures for terrain guarding tests."""

import os
from unittest.mock import patch

import pytest

from terrain_guard.config import Settings
from terrain_guard.core.terrain import Terrain
from terrain_guard.models.params import EndStyle, GenParams
from terrain_guard.services.gen import fixtures, random_terrain


@pytest.fixture
def e1() -> Terrain:
    return fixtures()["E1"]


@pytest.fixture
def e2() -> Terrain:
    return fixtures()["E2"]


@pytest.fixture
def mirror_e1() -> Terrain:
    return fixtures()["mirror_E1"]


@pytest.fixture
def t3() -> Terrain:
    return fixtures()["T3"]


@pytest.fixture
def corpus():
    """Factory for seeded generated terrains."""

    def make(
        count: int,
        *,
        steps: int = 8,
        max_run: int = 4,
        max_jump: int = 4,
        ends: EndStyle = EndStyle.VERTICAL_BOTH,
        first_seed: int = 0,
    ) -> list[Terrain]:
        return [
            random_terrain(GenParams(seed=s, steps=steps, max_run=max_run, max_jump=max_jump, ends=ends))
            for s in range(first_seed, first_seed + count)
        ]

    return make


@pytest.fixture
def slow_seeds() -> int:
    """Size of the slow property corpora."""
    return int(os.environ.get("TERRAIN_GUARD_TEST_SEEDS", "1000"))


@pytest.fixture
def instrumented():
    """Run every sweep with invariant checks and oracle cross-checks on."""
    settings = Settings(check_invariants=True, cross_check_visibility=True)
    with patch("terrain_guard.services.sweep.get_settings", return_value=settings):
        yield settings
