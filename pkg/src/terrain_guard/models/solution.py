"""Guard solution models."""

from dataclasses import dataclass
from enum import StrEnum

from pydantic import BaseModel, Field


class Provenance(StrEnum):
    LEFT_SWEEP = "left"
    RIGHT_SWEEP = "right"
    RETRACTION = "retraction"
    EXACT = "exact"


@dataclass(slots=True)
class InstrumentationCounters:
    """Operation counts of one sweep run."""

    lc_events: int = 0
    rc_events: int = 0
    lr_events: int = 0
    rr_events: int = 0
    intersection_events: int = 0
    intersections_discarded: int = 0
    stale_events: int = 0
    ms_pushes: int = 0
    ms_pops: int = 0
    ms_deletes: int = 0
    heap_inserts: int = 0
    heap_deletes: int = 0
    heap_pops: int = 0
    max_ms: int = 0
    max_heap: int = 0
    hull_pops: int = 0
    final_guards: int = 0

    @property
    def vertex_events(self) -> int:
        return self.lc_events + self.rc_events + self.lr_events + self.rr_events

    @property
    def heap_ops(self) -> int:
        return self.heap_inserts + self.heap_deletes + self.heap_pops


class GuardSolution(BaseModel):
    """A guard set with the ordered witness list of every guard."""

    guards: list[int] = Field(default_factory=list, description="Guard vertex indices, ascending")
    lists: dict[int, list[int]] = Field(default_factory=dict, description="Witnesses per guard, in insertion order")
    provenance: dict[int, list[Provenance]] = Field(default_factory=dict)
    counters: list[InstrumentationCounters] = Field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.guards)

    def list_of(self, guard: int) -> list[int]:
        return self.lists.get(guard, [])
