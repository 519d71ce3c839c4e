"""Exact geometry and the orthogonal terrain model."""

from .geometry import GeometryError, Point, Rational, Side, Turn, orient, ray_intersection, side_of_line
from .terrain import (
    Terrain,
    TerrainAlreadyVertical,
    TerrainError,
    TerrainErrorKind,
    VertexClass,
    classify,
    extend,
    height_range_at,
    mirror,
    upper_vertex,
    validate,
)

__all__ = [
    "GeometryError",
    "Point",
    "Rational",
    "Side",
    "Turn",
    "orient",
    "ray_intersection",
    "side_of_line",
    "Terrain",
    "TerrainAlreadyVertical",
    "TerrainError",
    "TerrainErrorKind",
    "VertexClass",
    "classify",
    "extend",
    "height_range_at",
    "mirror",
    "upper_vertex",
    "validate",
]
