"""
SVG figures: the body with squares, sectors and marked points drawn on top
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from jinja2 import Environment, FileSystemLoader

from .geometry import ConvexBody, Point2, Square, TruncatedSector

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).parent / "templates"

COLORS = {
    'body': '#1f3b5c',
    'square': '#c0392b',
    'level': '#e67e22',
    'witness': '#8e44ad',
    'sector': '#27ae60',
    'point': '#2c3e50',
}

LEGEND_ROW = 16


@dataclass
class _Layer:
    kind: str
    label: str
    color: str
    points: np.ndarray
    closed: bool = True
    dashed: bool = False
    fill: bool = False


class Figure:
    """One drawing in mathematical orientation (y up)"""

    def __init__(self, body: ConvexBody, title: str = "squarepeg", width: int = 480, padding: int = 24):
        self.title = title
        self.width = width
        self.padding = padding
        self.layers: List[_Layer] = [_Layer('body', 'body', COLORS['body'], body.xy, fill=True)]

    def add_square(self, sq: Square, label: str, color: Optional[str] = None, dashed: bool = False):
        self.layers.append(_Layer('square', label, color or COLORS['square'], sq.vertex_array(), dashed=dashed))

    def add_sector(self, sec: TruncatedSector, label: str, color: Optional[str] = None):
        outline = np.array([p.as_tuple() for p in sec.outline()])
        self.layers.append(_Layer('sector', label, color or COLORS['sector'], outline, fill=True))

    def add_point(self, p: Point2, label: str, color: Optional[str] = None):
        self.layers.append(_Layer('point', label, color or COLORS['point'], p.as_array()[None, :], closed=False))

    def _transform(self) -> Tuple[float, float, float]:
        allpts = np.vstack([layer.points for layer in self.layers])
        lo, hi = allpts.min(axis=0), allpts.max(axis=0)
        span = float(max(hi[0] - lo[0], hi[1] - lo[1])) or 1.0
        scale = (self.width - 2 * self.padding) / span
        return scale, float(lo[0]), float(hi[1])

    def render(self) -> str:
        scale, x0, y1 = self._transform()

        def screen(pts: np.ndarray) -> Sequence[Tuple[float, float]]:
            xs = self.padding + (pts[:, 0] - x0) * scale
            ys = self.padding + (y1 - pts[:, 1]) * scale
            return [(round(float(x), 3), round(float(y), 3)) for x, y in zip(xs, ys)]

        allpts = np.vstack([layer.points for layer in self.layers])
        drawing_height = int(np.ceil(2 * self.padding + (y1 - allpts[:, 1].min()) * scale))

        shapes = []
        for layer in self.layers:
            coords = screen(layer.points)
            if layer.kind == 'point':
                shapes.append({'kind': 'point', 'cx': coords[0][0], 'cy': coords[0][1], 'color': layer.color})
                continue
            d = "M " + " L ".join(f"{x} {y}" for x, y in coords) + (" Z" if layer.closed else "")
            shapes.append({
                'kind': layer.kind,
                'd': d,
                'color': layer.color,
                'fill': layer.color if layer.fill else 'none',
                'opacity': 0.15 if layer.fill else 1.0,
                'dashed': layer.dashed,
            })

        legend = [{'x': self.padding, 'y': drawing_height + i * LEGEND_ROW, 'label': layer.label, 'color': layer.color}
                  for i, layer in enumerate(self.layers)]
        height = drawing_height + len(legend) * LEGEND_ROW + self.padding // 2

        env = Environment(loader=FileSystemLoader(str(TEMPLATES_DIR)), autoescape=True)
        template = env.get_template('figure.svg.j2')
        return template.render(width=self.width, height=height, title=self.title, shapes=shapes, legend=legend)

    def save(self, path: str):
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, 'w', encoding='utf-8') as f:
            f.write(self.render())
        logger.info(f"Figure saved to {out}")
