"""Pydantic models for solutions, generator parameters and reports."""

from .params import EndStyle, GenParams
from .reports import BenchRow, CoverageReport, ReductionReport
from .solution import GuardSolution, InstrumentationCounters, Provenance

__all__ = [
    "EndStyle",
    "GenParams",
    "BenchRow",
    "CoverageReport",
    "ReductionReport",
    "GuardSolution",
    "InstrumentationCounters",
    "Provenance",
]
