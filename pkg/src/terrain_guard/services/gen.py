"""Seeded random orthogonal terrains and the named fixture terrains.

Terrains are drawn with numpy's PCG64 bit generator (PCG XSL RR 128/64,
seeded through numpy's SeedSequence), so a seed identifies a terrain on
every platform numpy supports. Horizontal runs are uniform in
[1, max_run]; walls are uniform in [1, max_jump] with a fair up/down sign.
Generation starts at (0, 0).
"""

from __future__ import annotations

import logging

import numpy as np

from ..core.terrain import Terrain, mirror
from ..models.params import EndStyle, GenParams
from .sweep import run_left_sweep

logger = logging.getLogger(__name__)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_terrain(p: GenParams) -> Terrain:
    """Deterministic terrain for the given parameters."""
    rng = _rng(p.seed)
    steps = p.steps
    walls = {EndStyle.VERTICAL_BOTH: steps + 1, EndStyle.HORIZONTAL_BOTH: steps - 1, EndStyle.MIXED: steps}[p.ends]

    runs = rng.integers(1, p.max_run, size=steps, endpoint=True, dtype=np.int64)
    heights = rng.integers(1, p.max_jump, size=walls, endpoint=True, dtype=np.int64)
    signs = rng.choice(np.array([-1, 1], dtype=np.int64), size=walls)
    x_levels = np.concatenate(([0], np.cumsum(runs)))
    y_levels = np.concatenate(([0], np.cumsum(heights * signs)))

    # Each run and each wall contributes one vertex; levels repeat at corners.
    if p.ends is EndStyle.VERTICAL_BOTH:
        xs = np.repeat(x_levels, 2)
        ys = np.repeat(y_levels, 2)[1:-1]
    elif p.ends is EndStyle.HORIZONTAL_BOTH:
        xs = np.concatenate(([0], np.repeat(x_levels[1:-1], 2), [x_levels[-1]]))
        ys = np.repeat(y_levels, 2)
    else:
        xs = np.repeat(x_levels, 2)[:-1]
        ys = np.concatenate(([0], np.repeat(y_levels[1:], 2)))

    terrain = Terrain.from_points(zip(xs.tolist(), ys.tolist()))
    logger.debug("Generated terrain seed=%d steps=%d ends=%s n=%d", p.seed, steps, p.ends, len(terrain))
    return terrain


E1_POINTS = [(0, 3), (0, 2), (2, 2), (2, 0), (5, 0), (5, 1), (7, 1), (7, 4)]
E2_POINTS = [(0, 1), (2, 1), (2, 0), (4, 0), (4, 2), (6, 2)]
# Left sweep fires one intersection at (17/2, 5) above the terrain.
T3_POINTS = [
    (8, 2), (8, 5), (10, 5), (10, 3), (11, 3), (11, 4), (16, 4),
    (16, 8), (18, 8), (18, 7), (21, 7), (21, 10), (23, 10), (23, 11),
]  # fmt: skip


def fixtures() -> dict[str, Terrain]:
    e1 = Terrain.from_points(E1_POINTS)
    return {
        "E1": e1,
        "E2": Terrain.from_points(E2_POINTS),
        "mirror_E1": mirror(e1)[0],
        "T3": Terrain.from_points(T3_POINTS),
    }


def find_intersection_seed(template: GenParams, max_seeds: int = 10_000) -> tuple[int, Terrain] | None:
    """First seed from template.seed on whose terrain the left sweep crosses rays."""
    for seed in range(template.seed, template.seed + max_seeds):
        params = template.model_copy(update={"seed": seed, "ends": EndStyle.VERTICAL_BOTH})
        terrain = random_terrain(params)
        counters = run_left_sweep(terrain).counters[0]
        if counters.intersection_events:
            logger.info("Seed %d fires %d intersection events", seed, counters.intersection_events)
            return seed, terrain
    return None
