"""Report models returned by verification and benchmarking."""

from pydantic import BaseModel


class CoverageReport(BaseModel):
    covered: bool
    guards: list[int]
    uncovered: list[int]


class ReductionReport(BaseModel):
    """Per-instance check of the reflex-guard reductions."""

    convex_cover: list[int]
    convex_cover_guards_all: bool
    optimum_any_candidates: int
    optimum_reflex_candidates: int

    @property
    def passed(self) -> bool:
        return self.convex_cover_guards_all and self.optimum_any_candidates == self.optimum_reflex_candidates


class BenchRow(BaseModel):
    n: int
    seed: int
    m: int
    seconds: float
    vertex_events: int
    intersection_events: int
    heap_ops: int
    heap_bound: float
    ms_ops: int
    invariants_ok: bool
