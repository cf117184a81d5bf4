"""
Data models for squarepeg
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .geometry import Point2, Square, TruncatedSector, wrap_angle


@dataclass(frozen=True)
class SectorCertificate:
    """A contained sector of angle pi/2 + delta witnessing f_delta > 0 at apex"""
    apex: Point2
    v: Point2
    theta: float
    delta: float

    @property
    def radius(self) -> float:
        return self.v.norm()

    def sector(self) -> TruncatedSector:
        return TruncatedSector(self.apex, self.v, self.theta)


@dataclass
class PointEvaluation:
    """f_delta at one sampled point"""
    point: Point2
    value: float
    certificate: Optional[SectorCertificate] = None
    kind: str = "boundary"  # vertex, boundary, interior


@dataclass
class ObtusenessReport:
    """Outcome of the obtuseness test"""
    obtuse: bool
    delta_used: float
    per_point: List[PointEvaluation]
    worst_point: Point2
    worst_value: float
    angle_verdict: bool
    strictness_margin: float
    min_interior_angle: float

    @property
    def sampled_verdict(self) -> bool:
        return self.obtuse

    @property
    def disagreement(self) -> bool:
        return self.obtuse != self.angle_verdict


@dataclass
class SStarResult:
    """Minimum of f_delta over the body together with where it was found"""
    value: float
    minimizer: Point2
    delta: float
    grid: int
    evaluations: int


@dataclass
class LscProbeResult:
    """Outcome of a lower semicontinuity probe at one point"""
    point: Point2
    f_value: float
    epsilon: float
    radius: Optional[float]
    # (probe radius, min f_delta on that circle, samples inside the body)
    per_radius: List[Tuple[float, float, int]] = field(default_factory=list)

    @property
    def failure(self) -> bool:
        return self.radius is None


@dataclass
class DirectionArc:
    """Directions e^{it}, t in [phi, psi], along which rays from base_point meet the body"""
    base_point: Point2
    phi: float
    psi: float
    samples: int = 0
    mismatches: int = 0

    @property
    def width(self) -> float:
        return self.psi - self.phi

    def contains(self, angle: float, slack: float = 0.0) -> bool:
        return wrap_angle(angle - self.phi + slack) <= self.width + 2.0 * slack


@dataclass
class TrivialityVerdict:
    """Whether a trivial square of side at most s was found"""
    s: float
    trivial: bool
    witness: Optional[Square] = None
    grid: Dict[str, Any] = field(default_factory=dict)


@dataclass
class LevelSquare:
    """A Table Theorem solution: a square whose vertices share a common height"""
    square: Square
    y: float
    residual: float
    center_in_body: bool
    trivial: bool
    heights: List[float] = field(default_factory=list)
    start_index: int = 0
    energy: float = 0.0


@dataclass
class InscribedSquareResult:
    """A square with all four vertices on the boundary"""
    square: Square
    max_boundary_distance: float
    method: str  # table_pipeline, oracle
    pipeline_trace: Dict[str, float] = field(default_factory=dict)
    level_square: Optional[Square] = None


@dataclass
class InscriptionCheck:
    """Verification metrics for a candidate inscribed square"""
    max_boundary_distance: float
    side_spread: float
    diagonal_orthogonality_error: float
    passed: bool
