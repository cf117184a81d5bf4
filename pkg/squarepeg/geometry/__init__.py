"""
Planar geometry: value types and convex polygonal bodies
"""
from .primitives import (
    HALF_PI,
    ORIGIN,
    TWO_PI,
    Point2,
    Square,
    TruncatedSector,
    quarter_turn_distance,
    square_vertices,
    wrap_angle,
    wrap_quarter_turn,
)
from .body import (
    ConvexBody,
    PointClass,
    arc_support,
    classify_point,
    diameter,
    gauge,
    radial_scale,
    sector_contains,
    tangent_cone,
)

__all__ = [
    'HALF_PI', 'ORIGIN', 'TWO_PI', 'Point2', 'Square', 'TruncatedSector',
    'quarter_turn_distance', 'square_vertices', 'wrap_angle', 'wrap_quarter_turn',
    'ConvexBody', 'PointClass', 'arc_support', 'classify_point', 'diameter', 'gauge',
    'radial_scale', 'sector_contains', 'tangent_cone',
]
