"""
Height fields supported on a convex body
"""
import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from ..errors import GridTooSmall, InputError, NegativeHeight
from ..geometry import ConvexBody, Point2
from ..geometry.body import gauge

logger = logging.getLogger(__name__)


class FieldKind(str, Enum):
    TABLETOP = "tabletop"
    GRID = "grid"
    USER = "user"


@dataclass(frozen=True)
class HeightField:
    """A nonnegative ground function that vanishes outside its body

    evaluator maps an (N, 2) array of points inside the body to N heights;
    evaluate and evaluate_many apply the exterior clamp.
    """
    body: ConvexBody
    evaluator: Callable[[np.ndarray], np.ndarray]
    kind: FieldKind = FieldKind.USER
    origin: Optional[Point2] = None

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        flat = pts.reshape(-1, 2)
        values = np.zeros(len(flat))
        inside = self.body.member_mask(flat)
        if np.any(inside):
            values[inside] = np.maximum(self.evaluator(flat[inside]), 0.0)
        return values.reshape(pts.shape[:-1])

    def evaluate(self, p: Point2) -> float:
        return float(self.evaluate_many(p.as_array()[None, :])[0])


def tabletop(body: ConvexBody, origin: Optional[Point2] = None) -> HeightField:
    """Radial tabletop 1 - gauge(p): 1 at the origin, 0 on the boundary and beyond

    origin defaults to the centroid. Each level set {f = y} is the boundary
    scaled by 1 - y about the origin.
    """
    o = body.centroid if origin is None else origin
    gauge(body, o.as_array(), o)  # raises OriginNotInterior

    def evaluator(points: np.ndarray) -> np.ndarray:
        return np.clip(1.0 - gauge(body, points, o), 0.0, 1.0)

    return HeightField(body, evaluator, FieldKind.TABLETOP, o)


@dataclass
class HeightGrid:
    """Heights sampled on a regular grid; heights[row][col] sits at (xs[col], ys[row])"""
    bbox: Tuple[float, float, float, float]
    nx: int
    ny: int
    heights: np.ndarray

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.bbox[0], self.bbox[2], self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.bbox[1], self.bbox[3], self.ny)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'HeightGrid':
        try:
            bbox = tuple(float(v) for v in data['bbox'])
            nx, ny = int(data['nx']), int(data['ny'])
            heights = np.asarray(data['heights'], dtype=float)
        except KeyError as e:
            raise InputError(f"Grid field: missing field {e}")
        except (TypeError, ValueError) as e:
            raise InputError(f"Grid field: malformed value ({e})")
        if len(bbox) != 4 or not (bbox[0] < bbox[2] and bbox[1] < bbox[3]):
            raise InputError("Grid field: 'bbox' must be [xmin, ymin, xmax, ymax] with xmin < xmax, ymin < ymax")
        if nx < 2 or ny < 2:
            raise GridTooSmall(f"Grid field needs at least 2x2 nodes, got {nx}x{ny}")
        if heights.size != nx * ny:
            raise InputError(f"Grid field: expected {nx * ny} heights for {nx}x{ny} nodes, got {heights.size}")
        return cls(bbox, nx, ny, heights.reshape(ny, nx))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'bbox': list(self.bbox),
            'nx': self.nx,
            'ny': self.ny,
            'heights': self.heights.ravel().tolist(),
        }

    @classmethod
    def sample(cls, field: HeightField, nx: int, ny: int, margin: float = 0.0) -> 'HeightGrid':
        """Sample an existing field on a grid over the body's bounding box"""
        xmin, ymin, xmax, ymax = field.body.bbox
        bbox = (xmin - margin, ymin - margin, xmax + margin, ymax + margin)
        grid = cls(bbox, nx, ny, np.zeros((ny, nx)))
        xx, yy = np.meshgrid(grid.xs, grid.ys)
        grid.heights = field.evaluate_many(np.stack([xx, yy], axis=-1))
        return grid


def load_grid_file(path: str) -> HeightGrid:
    """Read a grid field JSON file"""
    grid_file = Path(path)
    if not grid_file.exists():
        raise InputError(f"Grid field file not found: {path}")
    with open(grid_file, 'r', encoding='utf-8') as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    return HeightGrid.from_dict(data)


def field_from_grid(body: ConvexBody, grid: HeightGrid, interpolation: str = "bilinear") -> HeightField:
    """Bilinear interpolant of a height grid, zero outside the body"""
    if interpolation != "bilinear":
        raise InputError(f"Unsupported interpolation '{interpolation}'")
    if np.any(grid.heights < 0):
        raise NegativeHeight(f"Grid contains negative heights (min {grid.heights.min():.6g})")
    if not np.all(np.isfinite(grid.heights)):
        raise InputError("Grid heights must be finite")

    xmin, ymin, xmax, ymax = body.bbox
    slack = body.tol
    gx0, gy0, gx1, gy1 = grid.bbox
    if gx0 > xmin + slack or gy0 > ymin + slack or gx1 < xmax - slack or gy1 < ymax - slack:
        raise GridTooSmall(f"Grid bbox {grid.bbox} does not cover the body's bounding box {body.bbox}")

    xx, yy = np.meshgrid(grid.xs, grid.ys)
    exterior = ~body.member_mask(np.stack([xx, yy], axis=-1))
    loose = int(np.count_nonzero(grid.heights[exterior] > 0))
    if loose:
        logger.warning(f"{loose} grid nodes outside the body have nonzero height; they are clamped to 0")

    interpolator = RegularGridInterpolator((grid.ys, grid.xs), grid.heights, method='linear',
                                           bounds_error=False, fill_value=0.0)

    def evaluator(points: np.ndarray) -> np.ndarray:
        return interpolator(points[:, ::-1])

    return HeightField(body, evaluator, FieldKind.GRID)
