"""
Trivial squares: centered in the body with no vertex in its interior

A body is s-trivial when such a square of side at most s exists. At a
boundary point whose tangent cone is at most a right angle the square can be
written down directly from the cone.
"""
import logging
import math
from typing import Optional

import numpy as np

from .errors import ArcTooWide, InvalidSide, NotBoundaryPoint
from .geometry import (
    HALF_PI,
    TWO_PI,
    ConvexBody,
    Point2,
    PointClass,
    Square,
    classify_point,
    tangent_cone,
    wrap_angle,
    wrap_quarter_turn,
)
from .geometry.body import ANGLE_EPS
from .models import DirectionArc, TrivialityVerdict

logger = logging.getLogger(__name__)

# allowed excess of the arc width over a right angle
ARC_TOL = 1e-12

# angular slack around arc endpoints when cross-checking sampled directions
CROSS_CHECK_SLACK = 1e-6


def verify_trivial_square(body: ConvexBody, sq: Square, s: float, tol: Optional[float] = None) -> bool:
    """Center in the body, no vertex interior, side in (0, s]"""
    if not s > 0 or sq.side > s * (1.0 + 1e-12):
        return False
    tol = body.tol if tol is None else tol
    if classify_point(body, sq.center, tol) is PointClass.EXTERIOR:
        return False
    return not bool(np.any(body.interior_mask(sq.vertex_array(), tol)))


def sample_direction_set(body: ConvexBody, x: Point2, samples: int) -> np.ndarray:
    """Which of the directions 2*pi*k/samples send a ray from x into the body

    A direction qualifies when the ray stays in the body for a positive
    length (longer than the boundary tolerance).
    """
    angles = TWO_PI * np.arange(samples) / samples
    u = np.column_stack([np.cos(angles), np.sin(angles)])
    clearance = np.maximum(body.inside_distances(x.as_array()), 0.0)
    approach = u @ body.normals.T
    ahead = approach > ANGLE_EPS
    reach = np.where(ahead, clearance / np.where(ahead, approach, 1.0), np.inf).min(axis=1)
    return reach > body.tol


def direction_arc(body: ConvexBody, x: Point2, angular_resolution: int = 360) -> DirectionArc:
    """Arc [phi, psi] of directions from boundary point x that meet the body

    The arc comes from the tangent cone; angular_resolution sets how many
    sampled ray directions are cross-checked against it (0 disables it).
    """
    if classify_point(body, x) is not PointClass.BOUNDARY:
        raise NotBoundaryPoint(f"Point {x.as_tuple()} is not on the boundary")
    phi, psi = tangent_cone(body, x)
    arc = DirectionArc(x, phi, psi, samples=angular_resolution)
    if angular_resolution <= 0:
        return arc

    sampled = sample_direction_set(body, x, angular_resolution)
    mismatches = 0
    for k, hit in enumerate(sampled):
        offset = wrap_angle(TWO_PI * k / angular_resolution - phi)
        if hit and not arc.contains(TWO_PI * k / angular_resolution, CROSS_CHECK_SLACK):
            mismatches += 1
        elif not hit and CROSS_CHECK_SLACK < offset < arc.width - CROSS_CHECK_SLACK:
            mismatches += 1
    arc.mismatches = mismatches
    if mismatches:
        logger.warning(f"Direction arc at ({x.x:.6g}, {x.y:.6g}) disagrees with {mismatches} "
                       f"of {angular_resolution} sampled rays")
    return arc


def trivial_square_at(body: ConvexBody, x: Point2, s: float) -> Square:
    """Square of side s centered at x with vertices x + (s/sqrt 2) e^{i(phi + k pi/2)}

    Requires the direction arc at x to be at most a right angle; then one
    vertex lies on each supporting ray and the other two outside the cone.
    """
    if not s > 0:
        raise InvalidSide(f"Square side must be positive, got {s}")
    arc = direction_arc(body, x, angular_resolution=0)
    if arc.width > HALF_PI + ARC_TOL:
        raise ArcTooWide(f"Direction arc at {x.as_tuple()} spans {arc.width:.6f} rad, "
                         f"more than a right angle")
    return Square(x, s, arc.phi - 0.25 * math.pi)


def opposite_pair_square(x: Point2, u: Point2, s: float) -> Square:
    """Square centered at x with vertices x + (s/sqrt 2) u e^{i(pi/4 + k pi/2)}

    Handles a direction set made of two opposite directions u and -u, which
    only a segment produces; ConvexBody never does, so this is for direct use.
    """
    if not s > 0:
        raise InvalidSide(f"Square side must be positive, got {s}")
    return Square(x, s, u.angle())


def _search_centers(body: ConvexBody, boundary_samples: int, interior_grid: int, inward_offset: float) -> np.ndarray:
    """Vertices, boundary samples, their inward offsets, then an interior lattice"""
    rim = np.vstack([body.xy, body.boundary_points(boundary_samples)])
    centroid = body.centroid.as_array()
    inward = rim + inward_offset * (centroid - rim)

    xmin, ymin, xmax, ymax = body.bbox
    xs = xmin + (np.arange(interior_grid) + 0.5) * (xmax - xmin) / interior_grid
    ys = ymin + (np.arange(interior_grid) + 0.5) * (ymax - ymin) / interior_grid
    lattice = np.array(np.meshgrid(xs, ys)).reshape(2, -1).T
    lattice = lattice[body.interior_mask(lattice)]
    return np.vstack([rim, inward, lattice])


def find_trivial_square(body: ConvexBody, s: float, boundary_samples: int = 64, interior_grid: int = 12,
                        rotations: int = 16, side_steps: int = 16, inward_offset: float = 1e-3) -> TrivialityVerdict:
    """Search centers x rotations x sides s * 2^-j for a trivial square

    The scan order is lexicographic (center, rotation, side) and the first
    verified square wins. A negative verdict only means nothing was found at
    this resolution.
    """
    if not s > 0:
        raise InvalidSide(f"Side bound must be positive, got {s}")

    centers = _search_centers(body, boundary_samples, interior_grid, inward_offset)
    sides = s * 2.0 ** -np.arange(side_steps)
    grid_rotations = HALF_PI * np.arange(rotations) / rotations
    offsets = 0.25 * math.pi + HALF_PI * np.arange(4)
    grid = {
        'centers': int(len(centers)),
        'rotations': rotations,
        'side_steps': side_steps,
        'boundary_samples': boundary_samples,
        'interior_grid': interior_grid,
    }
    logger.info(f"Searching trivial squares of side <= {s:.6g} over {len(centers)} centers")

    for c in centers:
        center = Point2.from_array(c)
        cone = tangent_cone(body, center)
        extra = [wrap_quarter_turn(cone[0] - 0.25 * math.pi)] if cone is not None else []
        rots = np.array([wrap_quarter_turn(r) for r in list(extra) + list(grid_rotations)])

        # (rotation, side, vertex, xy)
        angles = rots[:, None] + offsets[None, :]
        unit = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        half_diag = sides / math.sqrt(2.0)
        verts = c + half_diag[None, :, None, None] * unit[:, None, :, :]
        blocked = np.any(body.interior_mask(verts), axis=-1)

        for r_idx, s_idx in np.argwhere(~blocked):
            sq = Square(center, float(sides[s_idx]), float(rots[r_idx]))
            if verify_trivial_square(body, sq, s):
                logger.debug(f"Trivial square at ({center.x:.6g}, {center.y:.6g}), side {sq.side:.6g}")
                return TrivialityVerdict(s, True, sq, grid)

    return TrivialityVerdict(s, False, None, grid)
