"""
Planar value types: points, squares and truncated sectors

Angles are plain float radians. Rotations are counterclockwise, so rotating
a vector by phi is multiplication by e^{i phi} in complex notation.
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..errors import InputError, InvalidSector, InvalidSide

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


def wrap_angle(angle: float) -> float:
    """Normalize an angle to [0, 2*pi)"""
    wrapped = math.fmod(angle, TWO_PI)
    if wrapped < 0:
        wrapped += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    return 0.0 if wrapped >= TWO_PI else wrapped


def wrap_quarter_turn(angle: float) -> float:
    """Normalize an angle to [0, pi/2)"""
    wrapped = math.fmod(angle, HALF_PI)
    if wrapped < 0:
        wrapped += HALF_PI
    return 0.0 if wrapped >= HALF_PI else wrapped


def quarter_turn_distance(a: float, b: float) -> float:
    """Distance between two angles taken modulo pi/2"""
    d = wrap_quarter_turn(a - b)
    return min(d, HALF_PI - d)


@dataclass(frozen=True)
class Point2:
    """A point (or vector) in the plane"""
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InputError(f"Point coordinates must be finite, got ({self.x}, {self.y})")
        # normalize numpy scalars so equality and JSON output stay plain
        object.__setattr__(self, 'x', float(self.x))
        object.__setattr__(self, 'y', float(self.y))

    @classmethod
    def polar(cls, radius: float, angle: float) -> 'Point2':
        return cls(radius * math.cos(angle), radius * math.sin(angle))

    @classmethod
    def from_array(cls, xy: Sequence[float]) -> 'Point2':
        return cls(float(xy[0]), float(xy[1]))

    def __add__(self, other: 'Point2') -> 'Point2':
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: 'Point2') -> 'Point2':
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> 'Point2':
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> 'Point2':
        return Point2(self.x / k, self.y / k)

    def __neg__(self) -> 'Point2':
        return Point2(-self.x, -self.y)

    def dot(self, other: 'Point2') -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: 'Point2') -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def angle(self) -> float:
        """Polar angle in [0, 2*pi)"""
        return wrap_angle(math.atan2(self.y, self.x))

    def rotated(self, phi: float) -> 'Point2':
        c, s = math.cos(phi), math.sin(phi)
        return Point2(c * self.x - s * self.y, s * self.x + c * self.y)

    def unit(self) -> 'Point2':
        n = self.norm()
        if n == 0:
            raise InputError("Cannot normalize the zero vector")
        return self / n

    def distance(self, other: 'Point2') -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


ORIGIN = Point2(0.0, 0.0)


def points_to_array(points: Iterable[Point2]) -> np.ndarray:
    return np.array([[p.x, p.y] for p in points], dtype=float).reshape(-1, 2)


@dataclass(frozen=True)
class Square:
    """A square given by center, side length and rotation

    Vertex k sits at center + (side/sqrt(2)) * e^{i(rotation + pi/4 + k*pi/2)}.
    The rotation is stored normalized to [0, pi/2).
    """
    center: Point2
    side: float
    rotation: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.side) and self.side > 0):
            raise InvalidSide(f"Square side must be positive, got {self.side}")
        object.__setattr__(self, 'side', float(self.side))
        object.__setattr__(self, 'rotation', wrap_quarter_turn(float(self.rotation)))

    @property
    def half_diagonal(self) -> float:
        return self.side / math.sqrt(2.0)

    def vertices(self) -> List[Point2]:
        return square_vertices(self)

    def vertex_array(self) -> np.ndarray:
        k = np.arange(4)
        angles = self.rotation + 0.25 * math.pi + k * HALF_PI
        r = self.half_diagonal
        return np.column_stack([
            self.center.x + r * np.cos(angles),
            self.center.y + r * np.sin(angles),
        ])

    def scaled(self, factor: float, about: Point2 = ORIGIN) -> 'Square':
        return Square(about + (self.center - about) * factor, self.side * factor, self.rotation)

    def translated(self, offset: Point2) -> 'Square':
        return Square(self.center + offset, self.side, self.rotation)

    def rotated(self, beta: float, about: Point2 = ORIGIN) -> 'Square':
        return Square(about + (self.center - about).rotated(beta), self.side, self.rotation + beta)

    @classmethod
    def from_vertices(cls, vertices: Sequence[Point2]) -> 'Square':
        """Rebuild a square from its four vertices in counterclockwise order"""
        if len(vertices) != 4:
            raise InputError(f"A square has 4 vertices, got {len(vertices)}")
        center = Point2(sum(v.x for v in vertices) / 4.0, sum(v.y for v in vertices) / 4.0)
        side = vertices[0].distance(vertices[1])
        rotation = (vertices[0] - center).angle() - 0.25 * math.pi
        return cls(center, side, rotation)


def square_vertices(sq: Square) -> List[Point2]:
    """The four vertices of a square, counterclockwise"""
    return [Point2.from_array(row) for row in sq.vertex_array()]


@dataclass(frozen=True)
class TruncatedSector:
    """The set {apex + r * e^{i phi} * v : phi in [0, theta], r in [0, 1]}

    The sector sweeps counterclockwise from v through the angle theta.
    """
    apex: Point2
    v: Point2
    theta: float

    def __post_init__(self):
        if self.v.x == 0 and self.v.y == 0:
            raise InvalidSector("Sector radius vector must be nonzero")
        if not (0 < self.theta <= math.pi):
            raise InvalidSector(f"Sector angle must lie in (0, pi], got {self.theta}")

    @property
    def radius(self) -> float:
        return self.v.norm()

    @property
    def start_angle(self) -> float:
        return self.v.angle()

    def arc_endpoints(self) -> Tuple[Point2, Point2]:
        return self.apex + self.v, self.apex + self.v.rotated(self.theta)

    def sample_points(self, radial: int = 100, angular: int = 100) -> np.ndarray:
        """Points on a polar grid over the sector, apex and arc included"""
        r = np.linspace(0.0, 1.0, radial)
        phi = self.start_angle + np.linspace(0.0, self.theta, angular)
        rr, pp = np.meshgrid(r * self.radius, phi)
        return np.column_stack([
            self.apex.x + (rr * np.cos(pp)).ravel(),
            self.apex.y + (rr * np.sin(pp)).ravel(),
        ])

    def outline(self, arc_points: int = 48) -> List[Point2]:
        """Closed outline (apex, arc) for drawing"""
        phi = self.start_angle + np.linspace(0.0, self.theta, arc_points)
        arc = [self.apex + Point2.polar(self.radius, a) for a in phi]
        return [self.apex] + arc
