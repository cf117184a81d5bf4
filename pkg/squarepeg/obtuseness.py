"""
Sector-radius function, obtuseness test and the nontriviality threshold s*

f_delta(x) is the largest radius of a truncated sector with apex x and angle
pi/2 + delta contained in the body. It increases to the supremum f_D(x) as
delta decreases to 0.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .errors import InputError, PointOutsideBody
from .geometry import (
    HALF_PI,
    TWO_PI,
    ConvexBody,
    Point2,
    PointClass,
    Square,
    TruncatedSector,
    arc_support,
    classify_point,
    tangent_cone,
    wrap_angle,
)
from .geometry.body import ANGLE_EPS
from .models import LscProbeResult, ObtusenessReport, PointEvaluation, SectorCertificate, SStarResult

logger = logging.getLogger(__name__)

# radii below this fraction of the diameter count as zero
RADIUS_RESOLUTION = 1e-10

# elements per vectorized block (points x orientations x edges)
_BLOCK = 1 << 20

# golden ratio conjugate for the bracketing search
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def sector_radii(body: ConvexBody, apexes: np.ndarray, orientations: np.ndarray, theta: float) -> np.ndarray:
    """Largest contained radius for each apex and sector orientation

    apexes has shape (P, 2), orientations shape (P, D) or (D,); the result
    has shape (P, D). For each edge half-plane the farthest arc point in the
    outward direction is radius * arc_support, so the radius is bounded by
    the apex clearance divided by the support.
    """
    apexes = np.asarray(apexes, dtype=float).reshape(-1, 2)
    orientations = np.asarray(orientations, dtype=float)
    P, E = len(apexes), body.n
    D = orientations.shape[-1]

    clearance = np.maximum(body.inside_distances(apexes), 0.0)
    out = np.empty((P, D))
    step = max(1, _BLOCK // (D * E))

    if orientations.ndim == 1:
        # orientations shared by every apex: one support table
        m = arc_support(body.normal_angles, orientations, theta)
        inverse = np.where(m > ANGLE_EPS, 1.0 / np.where(m > ANGLE_EPS, m, 1.0), np.inf)
        with np.errstate(invalid='ignore'):
            for i in range(0, P, step):
                # 0 * inf is nan for tangent edges through the apex; fmin skips it
                out[i:i + step] = np.fmin.reduce(clearance[i:i + step, None, :] * inverse, axis=-1)
        return out

    orient = np.broadcast_to(orientations, (P, D))
    for i in range(0, P, step):
        m = arc_support(body.normal_angles, orient[i:i + step], theta)
        binding = m > ANGLE_EPS
        ratio = np.where(binding, clearance[i:i + step, None, :] / np.where(binding, m, 1.0), np.inf)
        out[i:i + step] = ratio.min(axis=-1)
    return out


def _cone_orientations(body: ConvexBody, points: np.ndarray, theta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Boundary points and their tangent-cone aligned orientations (start, end and centered)"""
    rows, cands = [], []
    for i, kind in enumerate(body.classify_many(points)):
        if kind is not PointClass.BOUNDARY:
            continue
        phi, psi = tangent_cone(body, Point2.from_array(points[i]))
        rows.append(i)
        cands.append((phi, psi - theta, 0.5 * (phi + psi - theta)))
    return np.array(rows, dtype=int), np.array(cands, dtype=float).reshape(-1, 3)


def _refine_orientations(body: ConvexBody, points: np.ndarray, angles: np.ndarray, theta: float,
                         half_width: float, xtol: float = 1e-10) -> Tuple[np.ndarray, np.ndarray]:
    """Golden-section search for the best orientation in [a - half_width, a + half_width], all points at once"""
    def radii(a):
        return sector_radii(body, points, a[:, None], theta)[:, 0]

    lo, hi = angles - half_width, angles + half_width
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = radii(c), radii(d)
    steps = int(math.ceil(math.log(xtol / (2.0 * half_width)) / math.log(_GOLDEN)))
    for _ in range(max(steps, 0)):
        left = fc >= fd
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        new = np.where(left, hi - _GOLDEN * (hi - lo), lo + _GOLDEN * (hi - lo))
        fnew = radii(new)
        c, d, fc, fd = (np.where(left, new, d), np.where(left, c, new),
                        np.where(left, fnew, fd), np.where(left, fc, fnew))
    take_c = fc >= fd
    return np.where(take_c, fc, fd), np.where(take_c, c, d)


def _evaluate_points(body: ConvexBody, points: np.ndarray, delta: float,
                     dir_samples: int, refine: bool) -> Tuple[np.ndarray, np.ndarray]:
    """f_delta and the maximizing orientation for every point

    Every point tries the uniform orientation grid; boundary points also try
    the orientations aligned with their tangent cone.
    """
    theta = HALF_PI + delta
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    grid = TWO_PI * np.arange(dir_samples) / dir_samples
    radii = sector_radii(body, points, grid, theta)
    best = np.argmax(radii, axis=1)
    values = radii[np.arange(len(points)), best]
    angles = grid[best]

    rows, cands = _cone_orientations(body, points, theta)
    if len(rows):
        extra = sector_radii(body, points[rows], cands, theta)
        pick = np.argmax(extra, axis=1)
        extra_best = extra[np.arange(len(rows)), pick]
        better = extra_best > values[rows]
        values[rows[better]] = extra_best[better]
        angles[rows[better]] = cands[np.arange(len(rows)), pick][better]

    if refine and len(points):
        refined, refined_angles = _refine_orientations(body, points, angles, theta, TWO_PI / dir_samples)
        better = np.isfinite(refined) & (refined > values)
        values = np.where(better, refined, values)
        angles = np.where(better, refined_angles, angles)

    resolution = RADIUS_RESOLUTION * body.diameter
    values = np.where(values > resolution, values, 0.0)
    return values, np.mod(angles, TWO_PI)


def _check_args(delta: float, dir_samples: int):
    if not delta > 0:
        raise InputError(f"delta must be positive, got {delta}")
    if dir_samples < 8:
        raise InputError(f"dir_samples must be at least 8, got {dir_samples}")


def _certificate(point: Point2, value: float, angle: float, delta: float) -> Optional[SectorCertificate]:
    if value <= 0:
        return None
    return SectorCertificate(point, Point2.polar(value, angle), HALF_PI + delta, delta)


def f_delta(body: ConvexBody, x: Point2, delta: float = 1e-3, dir_samples: int = 64,
            refine: bool = True) -> Tuple[float, Optional[SectorCertificate]]:
    """Largest radius of a contained sector with apex x and angle pi/2 + delta

    Returns the radius and a certificate, or (0.0, None) when no orientation
    admits a positive radius.
    """
    _check_args(delta, dir_samples)
    if classify_point(body, x) is PointClass.EXTERIOR:
        raise PointOutsideBody(f"Point {x.as_tuple()} lies outside the body")

    values, angles = _evaluate_points(body, x.as_array(), delta, dir_samples, refine)
    value = float(values[0])
    return value, _certificate(x, value, float(angles[0]), delta)


def angle_criterion(body: ConvexBody, margin: float) -> bool:
    """A convex polygon is obtuse iff every interior angle exceeds pi/2 (by margin)"""
    return bool(np.all(body.interior_angles > HALF_PI + margin))


def is_obtuse(body: ConvexBody, delta: float = 1e-3, boundary_samples: Optional[int] = None,
              dir_samples: int = 64, strictness_margin: Optional[float] = None) -> ObtusenessReport:
    """Evaluate f_delta at every vertex and at evenly spaced boundary points"""
    _check_args(delta, dir_samples)
    if boundary_samples is None:
        boundary_samples = max(256, body.n)
    if boundary_samples < body.n:
        raise InputError(f"boundary_samples ({boundary_samples}) must be at least the vertex count ({body.n})")
    margin = delta if strictness_margin is None else strictness_margin

    points = np.vstack([body.xy, body.boundary_points(boundary_samples)])
    kinds = ["vertex"] * body.n + ["boundary"] * boundary_samples
    logger.info(f"Evaluating f_delta at {len(points)} boundary points (delta={delta})")
    values, angles = _evaluate_points(body, points, delta, dir_samples, refine=True)

    per_point = []
    for p, value, angle, kind in zip(points, values, angles, kinds):
        point = Point2.from_array(p)
        per_point.append(PointEvaluation(point, float(value), _certificate(point, float(value), float(angle), delta), kind))

    worst = int(np.argmin(values))
    obtuse = bool(np.all(values > 0))
    angle_verdict = angle_criterion(body, margin)
    report = ObtusenessReport(
        obtuse=obtuse,
        delta_used=delta,
        per_point=per_point,
        worst_point=per_point[worst].point,
        worst_value=float(values[worst]),
        angle_verdict=angle_verdict,
        strictness_margin=margin,
        min_interior_angle=float(np.min(body.interior_angles)),
    )
    if report.disagreement:
        logger.warning(f"Sampled verdict ({obtuse}) disagrees with the angle criterion ({angle_verdict}); "
                       f"minimum interior angle {report.min_interior_angle:.6f} rad")
    return report


def s_star_search(body: ConvexBody, delta: float = 1e-3, grid: int = 64, boundary_samples: int = 256,
                  dir_samples: int = 64, refine_candidates: int = 4,
                  boundary_report: Optional[ObtusenessReport] = None) -> SStarResult:
    """Minimize f_delta over an interior lattice, the vertices and boundary samples

    The coarse scan skips orientation refinement; the best candidates are
    re-evaluated in full and the overall best is polished with a short
    Nelder-Mead run over positions. A boundary_report from is_obtuse at the
    same delta supplies the rim values instead of rescanning them.
    """
    _check_args(delta, dir_samples)
    if grid < 8:
        raise InputError(f"grid must be at least 8, got {grid}")

    xmin, ymin, xmax, ymax = body.bbox
    xs = xmin + (np.arange(grid) + 0.5) * (xmax - xmin) / grid
    ys = ymin + (np.arange(grid) + 0.5) * (ymax - ymin) / grid
    lattice = np.array(np.meshgrid(xs, ys)).reshape(2, -1).T
    lattice = lattice[body.interior_mask(lattice)]

    if boundary_report is not None and boundary_report.delta_used == delta:
        rim = np.array([e.point.as_tuple() for e in boundary_report.per_point], dtype=float)
        rim_values = np.array([e.value for e in boundary_report.per_point], dtype=float)
        logger.debug(f"Reusing {len(rim)} boundary evaluations")
    else:
        rim = np.vstack([body.xy, body.boundary_points(boundary_samples)])
        rim_values, _ = _evaluate_points(body, rim, delta, dir_samples, refine=False)
    logger.info(f"Scanning f_delta at {len(lattice)} lattice points for s*")
    lattice_values, _ = _evaluate_points(body, lattice, delta, dir_samples, refine=False)

    points = np.vstack([rim, lattice])
    coarse = np.concatenate([rim_values, lattice_values])
    evaluations = len(points)

    shortlist = np.argsort(coarse, kind='stable')[:refine_candidates]
    refined, _ = _evaluate_points(body, points[shortlist], delta, dir_samples, refine=True)
    evaluations += len(shortlist)
    pick = int(np.argmin(refined))
    best_value, best_point = float(refined[pick]), Point2.from_array(points[shortlist[pick]])

    if best_value > 0:
        spacing = max(xmax - xmin, ymax - ymin) / grid
        penalty = 10.0 * body.diameter

        def objective(z):
            p = Point2(z[0], z[1])
            if classify_point(body, p) is PointClass.EXTERIOR:
                return penalty
            return f_delta(body, p, delta, dir_samples)[0]

        x0 = best_point.as_array()
        simplex = np.array([x0, x0 + [spacing, 0.0], x0 + [0.0, spacing]])
        res = minimize(objective, x0, method='Nelder-Mead',
                       options={'initial_simplex': simplex, 'maxiter': 60,
                                'xatol': 1e-6 * body.diameter, 'fatol': 1e-9 * body.diameter})
        evaluations += int(res.nfev)
        polished = Point2.from_array(res.x)
        if res.fun < best_value and classify_point(body, polished) is not PointClass.EXTERIOR:
            best_value, best_point = float(res.fun), polished

    logger.info(f"s* = {best_value:.6g} at ({best_point.x:.6g}, {best_point.y:.6g})")
    return SStarResult(float(best_value), best_point, delta, grid, evaluations)


def s_star(body: ConvexBody, delta: float = 1e-3, grid: int = 64, boundary_samples: int = 256,
           dir_samples: int = 64) -> float:
    """Nontriviality threshold: the minimum of f_delta over the body"""
    return s_star_search(body, delta, grid, boundary_samples, dir_samples).value


def lsc_probe(body: ConvexBody, x: Point2, epsilon: float, delta: float, radii: Sequence[float],
              dir_samples: int = 64, samples_per_circle: int = 16) -> LscProbeResult:
    """Check f_delta(y) > f_delta(x) - epsilon on circles of shrinking radius around x

    Returns the largest listed radius from which every smaller listed radius
    also satisfies the inequality at all samples inside the body; radius is
    None when even the smallest circle fails.
    """
    if classify_point(body, x) is PointClass.EXTERIOR:
        raise PointOutsideBody(f"Point {x.as_tuple()} lies outside the body")
    if not epsilon > 0:
        raise InputError(f"epsilon must be positive, got {epsilon}")
    radii = [float(r) for r in radii]
    if not radii or any(r <= 0 for r in radii) or any(a < b for a, b in zip(radii, radii[1:])):
        raise InputError("radii must be positive and sorted in descending order")

    fx, _ = f_delta(body, x, delta, dir_samples)
    angles = TWO_PI * np.arange(samples_per_circle) / samples_per_circle
    ring = np.column_stack([np.cos(angles), np.sin(angles)])

    per_radius: List[Tuple[float, float, int]] = []
    passes: List[bool] = []
    for r in radii:
        ys = x.as_array() + r * ring
        ys = ys[body.member_mask(ys)]
        if len(ys) == 0:
            per_radius.append((r, math.inf, 0))
            passes.append(True)
            continue
        values, _ = _evaluate_points(body, ys, delta, dir_samples, refine=True)
        low = float(values.min())
        per_radius.append((r, low, len(ys)))
        passes.append(low > fx - epsilon)

    radius = None
    for r, ok in zip(reversed(radii), reversed(passes)):
        if not ok:
            break
        radius = r
    if radius is None:
        logger.warning(f"Lower semicontinuity probe failed at ({x.x:.6g}, {x.y:.6g}): "
                       f"f={fx:.6g}, epsilon={epsilon:.3g}")
    return LscProbeResult(x, fx, epsilon, radius, per_radius)


def boundary_profile(body: ConvexBody, delta: float, samples: int,
                     dir_samples: int = 64) -> List[Tuple[float, float, float, float]]:
    """(arc length, x, y, f_delta) at evenly spaced boundary points"""
    points = body.boundary_points(samples)
    values, _ = _evaluate_points(body, points, delta, dir_samples, refine=True)
    spacing = body.perimeter / samples
    return [(i * spacing, float(p[0]), float(p[1]), float(v)) for i, (p, v) in enumerate(zip(points, values))]


def square_hits_sector_interior(sec: TruncatedSector, sq: Square, tol: float = 1e-12) -> bool:
    """True if some vertex of the square lies strictly inside the sector

    When the sector angle exceeds pi/2 and the square is centered at the
    apex with half-diagonal below the sector radius, one vertex always does.
    """
    start = sec.start_angle
    for vertex in sq.vertices():
        rel = vertex - sec.apex
        r = rel.norm()
        if r <= tol or r >= sec.radius - tol:
            continue
        offset = wrap_angle(rel.angle() - start)
        if tol < offset < sec.theta - tol:
            return True
    return False
