"""
Level squares: four legs of equal height at the vertices of a square of side s
"""
import logging
import math
from typing import Iterator, Tuple

import numpy as np
from scipy.optimize import minimize

from ..errors import InvalidSide, NoSolutionFound
from ..geometry import HALF_PI, Point2, PointClass, Square, classify_point, wrap_quarter_turn
from ..models import LevelSquare
from .fields import HeightField

logger = logging.getLogger(__name__)


def _vertex_array(center: np.ndarray, side: float, rotation: float) -> np.ndarray:
    angles = rotation + 0.25 * math.pi + HALF_PI * np.arange(4)
    r = side / math.sqrt(2.0)
    return center + r * np.column_stack([np.cos(angles), np.sin(angles)])


def leg_heights(field: HeightField, sq: Square) -> np.ndarray:
    return field.evaluate_many(sq.vertex_array())


def level_energy(field: HeightField, sq: Square) -> float:
    """Sum of squared deviations of the four leg heights from their mean"""
    h = leg_heights(field, sq)
    return float(np.sum((h - h.mean()) ** 2))


def start_ladder(field: HeightField, start_grid: int, start_rotations: int) -> Iterator[Tuple[float, float, float]]:
    """Centroid first, then interior grid centers crossed with rotations k*pi/(2*start_rotations)"""
    body = field.body
    c = body.centroid
    yield c.x, c.y, 0.0

    xmin, ymin, xmax, ymax = body.bbox
    xs = xmin + (np.arange(start_grid) + 0.5) * (xmax - xmin) / start_grid
    ys = ymin + (np.arange(start_grid) + 0.5) * (ymax - ymin) / start_grid
    rotations = HALF_PI * np.arange(start_rotations) / start_rotations
    for y in ys:
        for x in xs:
            if not body.interior_mask(np.array([x, y])):
                continue
            for alpha in rotations:
                yield float(x), float(y), float(alpha)


def solve_table(field: HeightField, s: float, start_grid: int = 5, start_rotations: int = 8,
                max_iters: int = 2000, level_tol: float = 1e-8, penalty: float = 1e3,
                allow_trivial: bool = True) -> LevelSquare:
    """Find a square of side s, centered in the body, whose four leg heights agree

    Each start of the ladder is accepted as is when already level, otherwise
    polished by Nelder-Mead on (cx, cy, alpha). The first start that reaches
    level_tol wins. With allow_trivial=False, solutions at height 0 with no
    interior leg are skipped.
    """
    if not s > 0:
        raise InvalidSide(f"Side must be positive, got {s}")
    body = field.body
    step = 0.1 * min(s, body.diameter)

    def energy(z: np.ndarray) -> float:
        center = z[:2]
        h = field.evaluate_many(_vertex_array(center, s, z[2]))
        value = float(np.sum((h - h.mean()) ** 2))
        outside = max(0.0, -float(body.inside_distances(center).min()))
        return value + penalty * outside ** 2

    best_residual = math.inf
    tried = 0
    # starts run in ladder order; the first one that levels within level_tol is returned
    for index, (cx, cy, alpha) in enumerate(start_ladder(field, start_grid, start_rotations)):
        tried += 1
        z = np.array([cx, cy, alpha])
        h = field.evaluate_many(_vertex_array(z[:2], s, z[2]))
        if float(h.max() - h.min()) > level_tol:
            simplex = np.array([z, z + [step, 0.0, 0.0], z + [0.0, step, 0.0], z + [0.0, 0.0, 0.1]])
            res = minimize(energy, z, method='Nelder-Mead',
                           options={'initial_simplex': simplex, 'maxiter': max_iters,
                                    'xatol': 1e-12, 'fatol': 1e-20})
            z = res.x
            logger.debug(f"Start {index}: {res.nit} iterations, energy {res.fun:.3e}")

        center = Point2(z[0], z[1])
        sq = Square(center, s, wrap_quarter_turn(z[2]))
        heights = leg_heights(field, sq)
        residual = float(heights.max() - heights.min())
        in_body = classify_point(body, center) is not PointClass.EXTERIOR
        if in_body:
            best_residual = min(best_residual, residual)
        if residual > level_tol or not in_body:
            continue

        y = float(heights.mean())
        trivial = y <= level_tol and not np.any(body.interior_mask(sq.vertex_array()))
        if trivial and not allow_trivial:
            logger.debug(f"Start {index}: skipping trivial solution")
            continue

        logger.info(f"Level square from start {index}: y={y:.10g}, residual={residual:.3e}")
        return LevelSquare(
            square=sq,
            y=y,
            residual=residual,
            center_in_body=True,
            trivial=bool(trivial),
            heights=[float(v) for v in heights],
            start_index=index,
            energy=float(np.sum((heights - y) ** 2)),
        )

    raise NoSolutionFound(f"No level square of side {s:.6g} within {level_tol:.1e} after {tried} starts "
                          f"(best residual {best_residual:.3e})",
                          best_residual=best_residual, starts_tried=tried)
