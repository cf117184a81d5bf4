"""
Shape specifications: parsing user input into convex bodies
"""
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from .errors import DegenerateBody, ShapeParseError
from .geometry import ConvexBody

logger = logging.getLogger(__name__)

SHAPE_KINDS = ('polygon', 'regular_ngon', 'ellipse', 'disk')


def regular_ngon(n: int, circumradius: float = 1.0, phase: float = 0.5 * math.pi) -> ConvexBody:
    """Regular n-gon centered at the origin, first vertex at angle phase"""
    if n < 3:
        raise DegenerateBody(f"A regular polygon needs n >= 3, got {n}")
    angles = phase + 2.0 * math.pi * np.arange(n) / n
    pts = np.column_stack([circumradius * np.cos(angles), circumradius * np.sin(angles)])
    return ConvexBody.from_points(pts, provenance="regular_ngon")


def sampled_ellipse(a: float, b: float, samples: int = 256) -> ConvexBody:
    """Polygon through samples points of the ellipse x^2/a^2 + y^2/b^2 = 1"""
    t = 2.0 * math.pi * np.arange(samples) / samples
    pts = np.column_stack([a * np.cos(t), b * np.sin(t)])
    return ConvexBody.from_points(pts, provenance="ellipse")


def sampled_disk(radius: float = 1.0, samples: int = 256) -> ConvexBody:
    """Regular polygon inscribed in the circle of the given radius, first vertex on the x axis"""
    t = 2.0 * math.pi * np.arange(samples) / samples
    pts = np.column_stack([radius * np.cos(t), radius * np.sin(t)])
    return ConvexBody.from_points(pts, provenance="disk")


@dataclass
class ShapeSpec:
    """A shape as given on the command line or in a shape JSON file"""
    kind: str
    params: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, **self.params}

    def build(self) -> ConvexBody:
        """Resolve the specification to a ConvexBody"""
        p = self.params
        if self.kind == 'polygon':
            return ConvexBody.from_points(p['vertices'], provenance="polygon")
        if self.kind == 'regular_ngon':
            return regular_ngon(p['n'], p['circumradius'])
        if self.kind == 'ellipse':
            return sampled_ellipse(p['a'], p['b'], p['samples'])
        if self.kind == 'disk':
            return sampled_disk(p['radius'], p['samples'])
        raise ShapeParseError(f"Unknown shape kind '{self.kind}'")


def _number(data: Dict[str, Any], key: str, kind: str, default: Any = None, integer: bool = False) -> Any:
    if key not in data:
        if default is None:
            raise ShapeParseError(f"{kind}: missing field '{key}'")
        return default
    value = data[key]
    try:
        if integer:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value)
        return float(value)
    except (TypeError, ValueError):
        raise ShapeParseError(f"{kind}: field '{key}' must be {'an integer' if integer else 'a number'}, got {value!r}")


def spec_from_dict(data: Dict[str, Any], curve_samples: int = 256) -> ShapeSpec:
    """Validate a shape dictionary and normalize it into a ShapeSpec"""
    if not isinstance(data, dict):
        raise ShapeParseError(f"Shape must be an object, got {type(data).__name__}")
    kind = data.get('kind')
    if kind not in SHAPE_KINDS:
        raise ShapeParseError(f"field 'kind' must be one of {', '.join(SHAPE_KINDS)}, got {kind!r}")

    unknown = set(data) - {'kind', 'vertices', 'n', 'circumradius', 'a', 'b', 'radius', 'samples'}
    if unknown:
        raise ShapeParseError(f"{kind}: unknown field(s) {', '.join(sorted(unknown))}")

    if kind == 'polygon':
        vertices = data.get('vertices')
        if not isinstance(vertices, list) or len(vertices) < 3:
            raise ShapeParseError("polygon: field 'vertices' must be a list of at least 3 [x, y] pairs")
        parsed: List[List[float]] = []
        for i, v in enumerate(vertices):
            if not isinstance(v, (list, tuple)) or len(v) != 2:
                raise ShapeParseError(f"polygon: vertices[{i}] must be an [x, y] pair, got {v!r}")
            try:
                parsed.append([float(v[0]), float(v[1])])
            except (TypeError, ValueError):
                raise ShapeParseError(f"polygon: vertices[{i}] has non-numeric coordinates {v!r}")
        return ShapeSpec('polygon', {'vertices': parsed})

    if kind == 'regular_ngon':
        n = _number(data, 'n', kind, integer=True)
        r = _number(data, 'circumradius', kind, default=1.0)
        if n < 3:
            raise ShapeParseError(f"regular_ngon: field 'n' must be >= 3, got {n}")
        if r <= 0:
            raise ShapeParseError(f"regular_ngon: field 'circumradius' must be > 0, got {r}")
        return ShapeSpec('regular_ngon', {'n': n, 'circumradius': r})

    samples = _number(data, 'samples', kind, default=curve_samples, integer=True)
    if samples < 32:
        raise ShapeParseError(f"{kind}: field 'samples' must be >= 32, got {samples}")
    if kind == 'ellipse':
        a = _number(data, 'a', kind)
        b = _number(data, 'b', kind)
        if a <= 0 or b <= 0:
            raise ShapeParseError(f"ellipse: fields 'a' and 'b' must be > 0, got a={a}, b={b}")
        return ShapeSpec('ellipse', {'a': a, 'b': b, 'samples': samples})

    radius = _number(data, 'radius', kind, default=1.0)
    if radius <= 0:
        raise ShapeParseError(f"disk: field 'radius' must be > 0, got {radius}")
    return ShapeSpec('disk', {'radius': radius, 'samples': samples})


def parse_inline(text: str, curve_samples: int = 256) -> ShapeSpec:
    """Parse an inline shape

    Accepts JSON (``{"kind": "disk", "radius": 1}``) or the compact form
    ``kind:key=value,...``; polygons use ``polygon:x,y;x,y;x,y``.
    """
    text = text.strip()
    if text.startswith('{'):
        return spec_from_dict(_loads(text, '<inline>'), curve_samples)

    kind, _, rest = text.partition(':')
    kind = kind.strip()
    if kind == 'polygon':
        vertices = []
        for i, pair in enumerate(filter(None, (s.strip() for s in rest.split(';')))):
            coords = pair.split(',')
            if len(coords) != 2:
                raise ShapeParseError(f"polygon: vertex {i} '{pair}' must be 'x,y'")
            vertices.append(coords)
        return spec_from_dict({'kind': 'polygon', 'vertices': vertices}, curve_samples)

    data: Dict[str, Any] = {'kind': kind}
    for item in filter(None, (s.strip() for s in rest.split(','))):
        key, sep, value = item.partition('=')
        if not sep:
            raise ShapeParseError(f"{kind}: expected key=value, got '{item}'")
        data[key.strip()] = value.strip()
    return spec_from_dict(data, curve_samples)


def load_shape_file(path: str, curve_samples: int = 256) -> ShapeSpec:
    """Read a shape JSON file"""
    shape_file = Path(path)
    if not shape_file.exists():
        raise ShapeParseError(f"Shape file not found: {path}")
    with open(shape_file, 'r', encoding='utf-8') as f:
        return spec_from_dict(_loads(f.read(), path), curve_samples)


def _loads(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ShapeParseError(f"{source}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")


def resolve_shape(shape: Optional[str], shape_json: Optional[str], curve_samples: int = 256) -> ShapeSpec:
    """Pick the shape from either the inline option or the JSON file option"""
    if shape and shape_json:
        raise ShapeParseError("Give either --shape or --shape-json, not both")
    if shape_json:
        return load_shape_file(shape_json, curve_samples)
    if shape:
        return parse_inline(shape, curve_samples)
    raise ShapeParseError("A shape is required: use --shape or --shape-json")
