"""Solver services: visibility, hull, sweep, pipeline, exact oracle and generator."""

from .exact import (
    ExactCapExceeded,
    InfeasibleInstance,
    lower_bound_certificate,
    minimum_guard_set,
    reduction_check,
    verify_guarding,
)
from .gen import find_intersection_seed, fixtures, random_terrain
from .hull import UpperHullStack, right_horizons
from .solver import (
    RetractionError,
    Side,
    approx_guard_set,
    approx_guard_set_async,
    one_sided_guard_set,
    retract_guards,
    verify_solution,
)
from .sweep import SweepConsistencyError, SweepTrace, extract_first_witnesses, run_left_sweep
from .visibility import VisibilityCapExceeded, sees, visibility_matrix, visible_from

__all__ = [
    "ExactCapExceeded",
    "InfeasibleInstance",
    "lower_bound_certificate",
    "minimum_guard_set",
    "reduction_check",
    "verify_guarding",
    "find_intersection_seed",
    "fixtures",
    "random_terrain",
    "UpperHullStack",
    "right_horizons",
    "RetractionError",
    "Side",
    "approx_guard_set",
    "approx_guard_set_async",
    "one_sided_guard_set",
    "retract_guards",
    "verify_solution",
    "SweepConsistencyError",
    "SweepTrace",
    "extract_first_witnesses",
    "run_left_sweep",
    "VisibilityCapExceeded",
    "sees",
    "visibility_matrix",
    "visible_from",
]
