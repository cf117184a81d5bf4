"""
Convex polygonal bodies and the predicates evaluated on them
"""
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.spatial import ConvexHull
from scipy.spatial import QhullError
from scipy.spatial.distance import pdist

from ..errors import DegenerateBody, OriginNotInterior
from .primitives import ORIGIN, TWO_PI, Point2, TruncatedSector, points_to_array, wrap_angle

logger = logging.getLogger(__name__)

PointLike = Union[Point2, Sequence[float]]

# arc support values at or below this are treated as tangent, not binding
ANGLE_EPS = 1e-12


class PointClass(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def _as_point(p: PointLike) -> Point2:
    return p if isinstance(p, Point2) else Point2.from_array(p)


@dataclass(frozen=True)
class ConvexBody:
    """A compact convex region stored as a counterclockwise convex polygon

    Use ConvexBody.from_points (or the shape factories) for arbitrary input;
    the constructor only validates an already canonical vertex list.
    """
    vertices: Tuple[Point2, ...]
    provenance: str = "polygon"
    tol_factor: float = 1e-9

    def __post_init__(self):
        verts = tuple(_as_point(v) for v in self.vertices)
        object.__setattr__(self, 'vertices', verts)
        if len(verts) < 3:
            raise DegenerateBody(f"A convex body needs at least 3 vertices, got {len(verts)}")
        xy = points_to_array(verts)
        edges = np.roll(xy, -1, axis=0) - xy
        turns = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if not np.all(turns > 0):
            raise DegenerateBody("Vertices must form a strictly convex counterclockwise polygon")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_points(cls, points: Iterable[PointLike], provenance: str = "polygon") -> 'ConvexBody':
        """Convex hull of a point list, oriented counterclockwise, collinear vertices removed"""
        xy = np.array([_as_point(p).as_tuple() for p in points], dtype=float).reshape(-1, 2)
        if len(xy) < 3:
            raise DegenerateBody(f"Need at least 3 points, got {len(xy)}")
        if not np.all(np.isfinite(xy)):
            raise DegenerateBody("Point coordinates must be finite")
        try:
            hull = ConvexHull(xy)
        except QhullError as e:
            raise DegenerateBody(f"Points do not span a 2D region: {str(e).splitlines()[0]}") from e

        # qhull returns 2D hull vertices counterclockwise
        ring = xy[hull.vertices]
        ring = _drop_collinear(ring)
        if len(ring) < 3:
            raise DegenerateBody("Convex hull has fewer than 3 vertices")
        return cls(tuple(Point2.from_array(v) for v in ring), provenance)

    # -- cached geometry ----------------------------------------------------

    @cached_property
    def xy(self) -> np.ndarray:
        return points_to_array(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def edges(self) -> np.ndarray:
        return np.roll(self.xy, -1, axis=0) - self.xy

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        return np.hypot(self.edges[:, 0], self.edges[:, 1])

    @cached_property
    def normals(self) -> np.ndarray:
        """Outward unit normals, one per edge"""
        e = self.edges / self.edge_lengths[:, None]
        return np.column_stack([e[:, 1], -e[:, 0]])

    @cached_property
    def normal_angles(self) -> np.ndarray:
        return np.mod(np.arctan2(self.normals[:, 1], self.normals[:, 0]), TWO_PI)

    @cached_property
    def area(self) -> float:
        x, y = self.xy[:, 0], self.xy[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))

    @cached_property
    def centroid(self) -> Point2:
        x, y = self.xy[:, 0], self.xy[:, 1]
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        w = x * yn - xn * y
        a6 = 6.0 * self.area
        return Point2(float(np.sum((x + xn) * w) / a6), float(np.sum((y + yn) * w) / a6))

    @cached_property
    def perimeter(self) -> float:
        return float(np.sum(self.edge_lengths))

    @cached_property
    def diameter(self) -> float:
        return float(np.max(pdist(self.xy)))

    @cached_property
    def tol(self) -> float:
        """Default boundary tolerance, tol_factor times the diameter"""
        return self.tol_factor * self.diameter

    @cached_property
    def bbox(self) -> Tuple[float, float, float, float]:
        lo, hi = self.xy.min(axis=0), self.xy.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @cached_property
    def interior_angles(self) -> np.ndarray:
        """Interior angle at each vertex, in (0, pi)"""
        out_dir = np.arctan2(self.edges[:, 1], self.edges[:, 0])
        back = -np.roll(self.edges, 1, axis=0)
        back_dir = np.arctan2(back[:, 1], back[:, 0])
        return np.mod(back_dir - out_dir, TWO_PI)

    # -- transforms ---------------------------------------------------------

    def translated(self, offset: PointLike) -> 'ConvexBody':
        t = _as_point(offset)
        return ConvexBody(tuple(v + t for v in self.vertices), self.provenance, self.tol_factor)

    def scaled(self, factor: float) -> 'ConvexBody':
        """Scale about the origin"""
        if factor <= 0:
            raise DegenerateBody(f"Scale factor must be positive, got {factor}")
        return ConvexBody(tuple(v * factor for v in self.vertices), self.provenance, self.tol_factor)

    def rotated(self, beta: float) -> 'ConvexBody':
        """Rotate counterclockwise about the origin"""
        return ConvexBody(tuple(v.rotated(beta) for v in self.vertices), self.provenance, self.tol_factor)

    def with_tol_factor(self, tol_factor: float) -> 'ConvexBody':
        if tol_factor < 0:
            raise DegenerateBody(f"tol_factor must be non-negative, got {tol_factor}")
        return replace(self, tol_factor=tol_factor)

    # -- vectorized kernels -------------------------------------------------

    def inside_distances(self, points: np.ndarray) -> np.ndarray:
        """Signed distance of each point to each edge line, positive inside

        points has shape (..., 2); the result has shape (..., n_edges).
        Computed from cross products so that points on an edge line through
        a vertex give exactly zero.
        """
        p = np.asarray(points, dtype=float)[..., None, :]
        rel = p - self.xy
        cross = self.edges[:, 0] * rel[..., 1] - self.edges[:, 1] * rel[..., 0]
        return cross / self.edge_lengths

    def classify_many(self, points: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
        """Vectorized classify_point; returns an array of PointClass values"""
        tol = self.tol if tol is None else tol
        pts = np.asarray(points, dtype=float)
        h = self.inside_distances(pts.reshape(-1, 2))
        interior = np.all(h > tol, axis=-1)
        exterior = np.any(h < -tol, axis=-1)
        out = np.full(interior.shape, PointClass.BOUNDARY, dtype=object)
        out[interior] = PointClass.INTERIOR
        out[exterior] = PointClass.EXTERIOR
        return out.reshape(pts.shape[:-1])

    def interior_mask(self, points: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
        tol = self.tol if tol is None else tol
        return np.all(self.inside_distances(points) > tol, axis=-1)

    def member_mask(self, points: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
        """True for points that are not exterior"""
        tol = self.tol if tol is None else tol
        return np.all(self.inside_distances(points) >= -tol, axis=-1)

    def boundary_distance(self, points: np.ndarray) -> np.ndarray:
        """Exact Euclidean distance from each point to the polygon boundary"""
        p = np.asarray(points, dtype=float)[..., None, :]
        rel = p - self.xy
        t = np.clip(np.sum(rel * self.edges, axis=-1) / self.edge_lengths ** 2, 0.0, 1.0)
        closest = self.xy + t[..., None] * self.edges
        d = np.linalg.norm(p - closest, axis=-1)
        return d.min(axis=-1)

    def boundary_points(self, count: int, offset: float = 0.0) -> np.ndarray:
        """count points evenly spaced by arc length, starting at vertex 0"""
        cumulative = np.concatenate([[0.0], np.cumsum(self.edge_lengths)])
        s = (offset + np.arange(count) * self.perimeter / count) % self.perimeter
        ring = np.vstack([self.xy, self.xy[:1]])
        return np.column_stack([np.interp(s, cumulative, ring[:, 0]), np.interp(s, cumulative, ring[:, 1])])


def _drop_collinear(ring: np.ndarray) -> np.ndarray:
    """Remove vertices whose neighbours are collinear with them"""
    scale = float(np.max(np.ptp(ring, axis=0))) or 1.0
    changed = True
    while changed and len(ring) > 3:
        changed = False
        prev = np.roll(ring, 1, axis=0)
        nxt = np.roll(ring, -1, axis=0)
        a, b = ring - prev, nxt - ring
        turn = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
        flat = turn <= 1e-12 * scale * scale
        if np.any(flat):
            # drop one at a time so neighbours are re-evaluated
            ring = np.delete(ring, int(np.argmax(flat)), axis=0)
            changed = True
    return ring


def arc_support(normal_angles: np.ndarray, start: np.ndarray, theta: float) -> np.ndarray:
    """max of cos(t - beta) over t in [start, start + theta]

    Broadcasts start (...,) against normal_angles (E,) to shape (..., E).
    """
    rel = np.mod(normal_angles - np.asarray(start, dtype=float)[..., None], TWO_PI)
    ends = np.maximum(np.cos(rel), np.cos(rel - theta))
    return np.where(rel <= theta, 1.0, ends)


def classify_point(body: ConvexBody, p: PointLike, tol: Optional[float] = None) -> PointClass:
    """Interior / Boundary / Exterior with respect to the edge half-planes"""
    tol = body.tol if tol is None else tol
    h = body.inside_distances(_as_point(p).as_array())
    if np.all(h > tol):
        return PointClass.INTERIOR
    if np.any(h < -tol):
        return PointClass.EXTERIOR
    return PointClass.BOUNDARY


def sector_contains(body: ConvexBody, sec: TruncatedSector, tol: Optional[float] = None) -> bool:
    """True iff the whole truncated sector lies inside the body

    Per edge half-plane: the apex must be inside, and the farthest point of
    the arc in the outward normal direction must be inside. The farthest
    point is the arc endpoint or, when the normal direction falls within the
    sweep, the point of the arc along the normal.
    """
    tol = body.tol if tol is None else tol
    h = body.inside_distances(sec.apex.as_array())
    if np.any(h < -tol):
        return False
    m = arc_support(body.normal_angles, np.array(sec.start_angle), sec.theta)
    return bool(np.all(sec.radius * m <= h + tol))


def radial_scale(body: ConvexBody, u: PointLike) -> float:
    """Distance from the origin to the boundary along direction u"""
    if classify_point(body, ORIGIN) is not PointClass.INTERIOR:
        raise OriginNotInterior("The origin must lie strictly inside the body")
    direction = _as_point(u).unit()
    offsets = body.inside_distances(np.zeros(2))
    proj = body.normals @ direction.as_array()
    ahead = proj > 0
    return float(np.min(offsets[ahead] / proj[ahead]))


def gauge(body: ConvexBody, points: np.ndarray, origin: Point2 = ORIGIN) -> np.ndarray:
    """Minkowski gauge ||p - o|| / rho(p - o) of the body about an interior origin"""
    offsets = body.inside_distances(origin.as_array())
    if np.any(offsets <= body.tol):
        raise OriginNotInterior(f"Gauge origin {origin.as_tuple()} is not strictly inside the body")
    rel = np.asarray(points, dtype=float) - origin.as_array()
    return np.max((rel @ body.normals.T) / offsets, axis=-1)


def diameter(body: ConvexBody) -> float:
    """Largest vertex-to-vertex distance"""
    return body.diameter


def tangent_cone(body: ConvexBody, p: PointLike, tol: Optional[float] = None) -> Optional[Tuple[float, float]]:
    """Angular interval [phi, psi] of directions pointing into the body from p

    Returns None for interior and exterior points. At a vertex the width is
    the interior angle, on an edge it is pi.
    """
    tol = body.tol if tol is None else tol
    point = _as_point(p)
    if classify_point(body, point, tol) is not PointClass.BOUNDARY:
        return None

    xy = point.as_array()
    dist_to_vertices = np.hypot(*(body.xy - xy).T)
    k = int(np.argmin(dist_to_vertices))
    if dist_to_vertices[k] <= tol:
        e = body.edges[k]
        phi = wrap_angle(math.atan2(e[1], e[0]))
        return phi, phi + float(body.interior_angles[k])

    h = np.abs(body.inside_distances(xy))
    j = int(np.argmin(h))
    e = body.edges[j]
    phi = wrap_angle(math.atan2(e[1], e[0]))
    return phi, phi + math.pi
