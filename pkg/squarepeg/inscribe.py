"""
Inscribed squares: the tabletop pipeline, a brute-force oracle and a verifier
"""
import logging
import math
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import least_squares

from .config import Config
from .errors import DegenerateY, InputError, NoSolutionFound, NotObtuse, SolverFailed
from .geometry import HALF_PI, ORIGIN, ConvexBody, Point2, Square, quarter_turn_distance
from .models import InscribedSquareResult, InscriptionCheck
from .obtuseness import is_obtuse, s_star_search
from .table import solve_table, tabletop

logger = logging.getLogger(__name__)

# pair blocks for the oracle's vectorized boundary test
_PAIR_BLOCK = 4096

SHAPE_TOL = 1e-9


def inscribe_via_table(body: ConvexBody, config: Optional[Config] = None) -> InscribedSquareResult:
    """Inscribed square of an obtuse body through a level square of the tabletop field

    The body is moved so its centroid is the origin. A level square of side
    d = safety * s* is nontrivial, so its common height y lies in (0, 1) and
    its legs sit on the boundary scaled by 1 - y; dividing by 1 - y puts
    them on the boundary itself.
    """
    config = config or Config.from_env()
    ob, tb = config.obtuseness, config.table

    shift = body.centroid
    centered = body.translated(-shift)

    verdict = is_obtuse(centered, ob.delta, max(ob.boundary_samples, centered.n), ob.dir_samples,
                        ob.strictness_margin)
    if not verdict.obtuse:
        worst = verdict.worst_point + shift
        raise NotObtuse(f"Body is not obtuse: no sector of angle pi/2+{ob.delta:g} fits at "
                        f"({worst.x:.6g}, {worst.y:.6g})")

    star = s_star_search(centered, ob.delta, ob.grid, ob.boundary_samples, ob.dir_samples,
                         boundary_report=verdict)
    if star.value <= 0:
        raise NotObtuse(f"s* vanishes at ({star.minimizer.x:.6g}, {star.minimizer.y:.6g})")
    d = config.inscribe.safety * star.value
    logger.info(f"s* = {star.value:.6g}, solving for a level square of side d = {d:.6g}")

    field = tabletop(centered, ORIGIN)
    try:
        level = solve_table(field, d, tb.start_grid, tb.start_rotations, tb.max_iters, tb.level_tol,
                            tb.penalty, allow_trivial=False)
    except NoSolutionFound as e:
        raise SolverFailed(f"No nontrivial level square of side {d:.6g}: {e}") from e

    y = level.y
    if not 0 < y < 1:
        raise DegenerateY(f"Common height y = {y:.6g} is outside (0, 1)")

    square = level.square.scaled(1.0 / (1.0 - y)).translated(shift)
    distance = float(body.boundary_distance(square.vertex_array()).max())
    logger.info(f"Inscribed square: side {square.side:.6g}, max boundary distance {distance:.3e}")

    return InscribedSquareResult(
        square=square,
        max_boundary_distance=distance,
        method="table_pipeline",
        pipeline_trace={
            's_star_used': star.value,
            'd_used': d,
            'y': y,
            'residual': level.residual,
        },
        level_square=level.square.translated(shift),
    )


def _edge_slack(body: ConvexBody, points: np.ndarray) -> np.ndarray:
    """min_j of the inside distances: zero exactly on the boundary, positive inside"""
    return body.inside_distances(points).min(axis=-1)


def _square_params(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """(cx, cy, side, rotation) of the squares with diagonal p -> q"""
    m = 0.5 * (p + q)
    half = p - m
    side = np.sqrt(2.0) * np.hypot(half[:, 0], half[:, 1])
    rotation = np.mod(np.arctan2(half[:, 1], half[:, 0]) - 0.25 * math.pi, HALF_PI)
    return np.column_stack([m, side, rotation])


def _squares_close(a: Square, b: Square, eps: float) -> bool:
    return (a.center.distance(b.center) <= eps and abs(a.side - b.side) <= eps
            and quarter_turn_distance(a.rotation, b.rotation) <= eps)


def _dedupe(squares: Sequence[Square], eps: float) -> List[Square]:
    kept: List[Square] = []
    for sq in squares:
        if not any(_squares_close(sq, other, eps) for other in kept):
            kept.append(sq)
    return kept


def oracle_inscribed_squares(body: ConvexBody, n_boundary: int = 360, eps: Optional[float] = None) -> List[Square]:
    """Brute-force inscribed squares from pairs of boundary samples used as diagonals

    For each pair the other two vertices are fixed; pairs whose closing
    vertices come within eps of the boundary are refined by least squares on
    the vertices' boundary offsets. Refined squares are kept when every
    vertex is within min(eps, 1e-6 * diameter) of the boundary, then
    deduplicated at tolerance eps.
    """
    if n_boundary < 32:
        raise InputError(f"n_boundary must be at least 32, got {n_boundary}")
    if eps is None:
        eps = 1.5 * body.perimeter / n_boundary
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps}")

    samples = body.boundary_points(n_boundary)
    first, second = np.triu_indices(n_boundary, 1)
    candidates = []
    for start in range(0, len(first), _PAIR_BLOCK):
        p = samples[first[start:start + _PAIR_BLOCK]]
        q = samples[second[start:start + _PAIR_BLOCK]]
        m = 0.5 * (q + p)
        turn = 0.5 * np.column_stack([p[:, 1] - q[:, 1], q[:, 0] - p[:, 0]])
        slack = np.maximum(np.abs(_edge_slack(body, m + turn)), np.abs(_edge_slack(body, m - turn)))
        keep = slack <= eps
        if np.any(keep):
            candidates.append(np.column_stack([_square_params(p[keep], q[keep]), slack[keep]]))

    if not candidates:
        logger.info("Oracle found no candidate diagonals")
        return []
    table = np.vstack(candidates)
    table = table[np.argsort(table[:, 4], kind='stable')]
    logger.info(f"Oracle refining {len(table)} candidate diagonals")

    seeds = _dedupe([Square(Point2(cx, cy), side, rot) for cx, cy, side, rot, _ in table], eps)
    min_side = 1e-6 * body.diameter
    accept = min(eps, 1e-6 * body.diameter)
    found: List[Square] = []
    for seed in seeds:
        def residuals(z):
            if z[2] <= 0:
                return np.full(4, body.diameter)
            angles = z[3] + 0.25 * math.pi + HALF_PI * np.arange(4)
            verts = z[:2] + (z[2] / math.sqrt(2.0)) * np.column_stack([np.cos(angles), np.sin(angles)])
            return _edge_slack(body, verts)

        z0 = np.array([seed.center.x, seed.center.y, seed.side, seed.rotation])
        res = least_squares(residuals, z0, xtol=1e-14, ftol=1e-14, gtol=1e-14, max_nfev=200)
        side = float(res.x[2])
        if side < min_side or abs(side - seed.side) > 0.25 * seed.side:
            continue
        sq = Square(Point2(res.x[0], res.x[1]), side, float(res.x[3]))
        if float(body.boundary_distance(sq.vertex_array()).max()) <= accept:
            found.append(sq)

    squares = _dedupe(found, eps)
    logger.info(f"Oracle kept {len(squares)} inscribed squares")
    return squares


def verify_inscribed(body: ConvexBody, sq: Square, eps: float) -> InscriptionCheck:
    """Distance of the vertices to the boundary and the shape errors of the quadrilateral"""
    verts = sq.vertex_array()
    distance = float(body.boundary_distance(verts).max())
    sides = np.linalg.norm(np.roll(verts, -1, axis=0) - verts, axis=1)
    side_spread = float((sides.max() - sides.min()) / sides.mean())
    d1, d2 = verts[2] - verts[0], verts[3] - verts[1]
    orthogonality = float(abs(d1 @ d2) / (np.linalg.norm(d1) * np.linalg.norm(d2)))
    passed = distance <= eps and side_spread <= SHAPE_TOL and orthogonality <= SHAPE_TOL
    return InscriptionCheck(distance, side_spread, orthogonality, passed)


def closest_square(sq: Square, candidates: Sequence[Square]) -> Optional[Square]:
    """Candidate nearest to sq in (center, side)"""
    if not candidates:
        return None
    return min(candidates, key=lambda c: max(c.center.distance(sq.center), abs(c.side - sq.side)))


def square_mismatch(a: Square, b: Square) -> float:
    return max(a.center.distance(b.center), abs(a.side - b.side))
