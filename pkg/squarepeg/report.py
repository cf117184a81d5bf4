"""
Run reports: JSON output of the CLI commands and CSV profile dumps
"""
import csv
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

from . import __version__
from .geometry import Point2, Square
from .models import (
    DirectionArc,
    InscribedSquareResult,
    InscriptionCheck,
    LevelSquare,
    ObtusenessReport,
    SStarResult,
    TrivialityVerdict,
)
from .utils import CustomJSONEncoder, to_plain

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    """Everything one CLI invocation produced

    timing is kept apart from results so that repeated runs can be compared
    byte for byte with it removed.
    """
    command: str
    input: Dict[str, Any]
    config: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)
    version: str = __version__

    def __post_init__(self):
        self.input = to_plain(self.input)
        self.config = to_plain(self.config)
        self.results = to_plain(self.results)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        if not include_timing:
            data.pop('timing')
        return data

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, cls=CustomJSONEncoder)

    @classmethod
    def from_json(cls, text: str) -> 'RunReport':
        return cls(**json.loads(text))

    def save(self, path: str):
        """Save the report as JSON"""
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, 'w', encoding='utf-8') as f:
            f.write(self.to_json())
            f.write('\n')
        logger.info(f"Report saved to {out}")


def write_profile_csv(path: str, rows: Iterable[Tuple[float, float, float, float]]):
    """Write (arc length, x, y, f_delta) rows with a header"""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['arc_length', 'x', 'y', 'f_delta'])
        for row in rows:
            writer.writerow([repr(float(v)) for v in row])
    logger.info(f"Profile saved to {out}")


def point_dict(p: Point2) -> List[float]:
    return [p.x, p.y]


def square_dict(sq: Square) -> Dict[str, Any]:
    return {
        'center': point_dict(sq.center),
        'side': sq.side,
        'rotation': sq.rotation,
        'vertices': [point_dict(v) for v in sq.vertices()],
    }


def obtuseness_dict(report: ObtusenessReport, include_points: bool = True) -> Dict[str, Any]:
    data = {
        'obtuse': report.obtuse,
        'delta': report.delta_used,
        'worst_point': point_dict(report.worst_point),
        'worst_value': report.worst_value,
        'angle_verdict': report.angle_verdict,
        'strictness_margin': report.strictness_margin,
        'min_interior_angle': report.min_interior_angle,
        'disagreement': report.disagreement,
    }
    if include_points:
        points = []
        for ev in report.per_point:
            entry = {'point': point_dict(ev.point), 'kind': ev.kind, 'value': ev.value, 'certificate': None}
            if ev.certificate is not None:
                entry['certificate'] = {
                    'apex': point_dict(ev.certificate.apex),
                    'v': point_dict(ev.certificate.v),
                    'theta': ev.certificate.theta,
                }
            points.append(entry)
        data['points'] = points
    return data


def s_star_dict(result: SStarResult) -> Dict[str, Any]:
    return {
        'value': result.value,
        'minimizer': point_dict(result.minimizer),
        'delta': result.delta,
        'grid': result.grid,
        'evaluations': result.evaluations,
    }


def triviality_dict(verdict: TrivialityVerdict) -> Dict[str, Any]:
    return {
        's': verdict.s,
        'trivial': verdict.trivial,
        'witness': square_dict(verdict.witness) if verdict.witness is not None else None,
        'grid': verdict.grid,
    }


def arc_dict(arc: DirectionArc) -> Dict[str, Any]:
    return {
        'base_point': point_dict(arc.base_point),
        'phi': arc.phi,
        'psi': arc.psi,
        'width': arc.width,
        'samples': arc.samples,
        'mismatches': arc.mismatches,
    }


def level_square_dict(level: LevelSquare) -> Dict[str, Any]:
    return {
        'square': square_dict(level.square),
        'y': level.y,
        'residual': level.residual,
        'center_in_body': level.center_in_body,
        'trivial': level.trivial,
        'heights': level.heights,
        'start_index': level.start_index,
    }


def check_dict(check: InscriptionCheck) -> Dict[str, Any]:
    return asdict(check)


def inscribed_dict(result: InscribedSquareResult, check: Optional[InscriptionCheck] = None) -> Dict[str, Any]:
    data = {
        'method': result.method,
        'square': square_dict(result.square),
        'max_boundary_distance': result.max_boundary_distance,
        'pipeline_trace': result.pipeline_trace,
        'level_square': square_dict(result.level_square) if result.level_square is not None else None,
    }
    if check is not None:
        data['check'] = check_dict(check)
    return data
