"""Exact Voronoi strong proximity, finite proximity spaces and descriptive nearness."""

from __future__ import annotations

from .exactgeom import Box, ConvexRegion, HalfPlane, Point2, bisector_halfplane, intersect_convex, intersect_halfplanes
from .finitetop import FiniteTopology, ProximityRelation, canonical_strong, check_lodato, check_strong
from .voronoi import (
    FAR,
    NEAR_ONLY,
    STRONGLY_NEAR,
    SiteSet,
    VoronoiDiagram,
    build_diagram,
    classification_matrix,
    region_uniqueness_check,
    smallest_open_set,
)

__version__ = "0.1.0"

__all__ = [
    "Box", "ConvexRegion", "HalfPlane", "Point2", "bisector_halfplane", "intersect_convex",
    "intersect_halfplanes", "FiniteTopology", "ProximityRelation", "canonical_strong", "check_lodato",
    "check_strong", "FAR", "NEAR_ONLY", "STRONGLY_NEAR", "SiteSet", "VoronoiDiagram", "build_diagram",
    "classification_matrix", "region_uniqueness_check", "smallest_open_set",
]
