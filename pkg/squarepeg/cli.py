"""
Command-line interface for squarepeg
"""

import functools
import logging
import sys
import time
from dataclasses import asdict
from typing import Any, Dict, Optional

import click
import numpy as np

from .config import Config
from .errors import ConfigError, InputError, NotObtuse, SquarePegError
from .geometry import ConvexBody, Point2, TruncatedSector
from .inscribe import closest_square, inscribe_via_table, oracle_inscribed_squares, square_mismatch, verify_inscribed
from .obtuseness import boundary_profile, f_delta, is_obtuse, s_star_search
from .report import (
    RunReport,
    arc_dict,
    inscribed_dict,
    level_square_dict,
    obtuseness_dict,
    s_star_dict,
    square_dict,
    triviality_dict,
    write_profile_csv,
)
from .shapes import resolve_shape
from .svg import COLORS, Figure
from .table import field_from_grid, load_grid_file, solve_table, tabletop
from .triviality import direction_arc, find_trivial_square, trivial_square_at, verify_trivial_square
from .utils import line_separator, parse_point

logger = logging.getLogger(__name__)


def shape_options(func):
    """--shape / --shape-json pair shared by every command"""
    func = click.option('--shape-json', type=click.Path(), help='Path to a shape JSON file')(func)
    func = click.option('--shape', '-s', help='Inline shape: JSON or kind:key=value,... (polygon:x,y;x,y;...)')(func)
    return func


def report_options(func):
    func = click.option('--svg', 'svg_path', type=click.Path(), help='Write an SVG figure to this path')(func)
    func = click.option('--out', '-o', type=click.Path(), help='Write the JSON report to this path')(func)
    return func


def handle_errors(func):
    """Turn squarepeg errors into a message on stderr and the matching exit code"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except SquarePegError as e:
            click.echo(f"Error ({type(e).__name__}): {e}", err=True)
            if e.hint:
                click.echo(f"Hint: {e.hint}", err=True)
            sys.exit(e.exit_code)
    return wrapper


def _overrides(section: str, **values: Any) -> Dict[str, Dict[str, Any]]:
    return {section: {k: v for k, v in values.items() if v is not None}}


def _load_body(config: Config, shape: Optional[str], shape_json: Optional[str]):
    spec = resolve_shape(shape, shape_json, config.geometry.curve_samples)
    body = spec.build().with_tol_factor(config.geometry.tol_factor)
    logger.info(f"Loaded {spec.kind} with {body.n} vertices")
    return spec, body


def _emit(report: RunReport, out: Optional[str]):
    if out:
        report.save(out)
    click.echo(report.to_json())


@click.group()
@click.option('--config', '-c', 'config_path', help='Path to configuration file')
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.pass_context
def cli(ctx, config_path: Optional[str], verbose: bool):
    """squarepeg - Obtuse convex bodies, level squares and inscribed squares"""
    ctx.ensure_object(dict)

    # Load configuration
    try:
        config = Config.from_yaml(config_path) if config_path else Config.from_env()
    except (FileNotFoundError, ValueError) as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(ConfigError.exit_code)

    # Setup logging
    level = logging.DEBUG if verbose else getattr(logging, config.logging.level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )

    ctx.obj['config'] = config


@cli.command()
@shape_options
@click.option('--delta', type=float, help='Excess of the sector angle over pi/2')
@click.option('--grid', type=int, help='Interior lattice size for the s* search')
@click.option('--boundary-samples', type=int, help='Boundary points checked besides the vertices')
@click.option('--dir-samples', type=int, help='Sector orientations per point')
@click.option('--profile-csv', type=click.Path(), help='Dump f_delta along the boundary as CSV')
@click.option('--no-points', is_flag=True, help='Leave per-point evaluations out of the report')
@report_options
@click.pass_context
@handle_errors
def analyze(ctx, shape, shape_json, delta, grid, boundary_samples, dir_samples, profile_csv, no_points, out, svg_path):
    """Obtuseness verdict, worst point and the threshold s*"""
    config = ctx.obj['config'].updated(_overrides(
        'obtuseness', delta=delta, grid=grid, boundary_samples=boundary_samples, dir_samples=dir_samples))
    ob = config.obtuseness
    spec, body = _load_body(config, shape, shape_json)

    timing = {}
    started = time.perf_counter()
    verdict = is_obtuse(body, ob.delta, max(ob.boundary_samples, body.n), ob.dir_samples, ob.strictness_margin)
    timing['is_obtuse'] = time.perf_counter() - started

    started = time.perf_counter()
    star = s_star_search(body, ob.delta, ob.grid, ob.boundary_samples, ob.dir_samples, boundary_report=verdict)
    timing['s_star'] = time.perf_counter() - started

    # below s* no trivial square should turn up; a body with s* = 0 is searched up to its diameter
    side = 0.5 * star.value if star.value > 0 else body.diameter
    started = time.perf_counter()
    trivial = find_trivial_square(body, side, **asdict(config.triviality))
    timing['triviality'] = time.perf_counter() - started

    if profile_csv:
        write_profile_csv(profile_csv, boundary_profile(body, ob.delta, ob.boundary_samples, ob.dir_samples))

    report = RunReport(
        command='analyze',
        input={'shape': spec.to_dict(), 'vertices': body.n},
        config=config.as_dict(),
        results={
            'obtuseness': obtuseness_dict(verdict, include_points=not no_points),
            's_star': s_star_dict(star),
            'triviality': triviality_dict(trivial),
        },
        timing=timing,
    )

    if svg_path:
        figure = Figure(body, title=f"analyze: {spec.kind}")
        figure.add_point(verdict.worst_point, f"worst point (f = {verdict.worst_value:.4g})")
        _, certificate = f_delta(body, star.minimizer, ob.delta, ob.dir_samples)
        if certificate is not None:
            figure.add_sector(certificate.sector(), f"sector at s* minimizer (radius {certificate.radius:.4g})")
        figure.add_point(star.minimizer, f"s* minimizer (s* = {star.value:.4g})", COLORS['sector'])
        if trivial.witness is not None:
            figure.add_square(trivial.witness, f"trivial square (side {trivial.witness.side:.4g})", COLORS['witness'])
        figure.save(svg_path)

    _emit(report, out)


@cli.command()
@shape_options
@click.option('--method', type=click.Choice(['table', 'oracle', 'both']), default='both', show_default=True,
              help='Tabletop pipeline, brute-force oracle, or both')
@click.option('--eps', type=float, help='Boundary tolerance for the oracle and the verification')
@click.option('--n-boundary', type=int, help='Boundary samples for the oracle')
@report_options
@click.pass_context
@handle_errors
def inscribe(ctx, shape, shape_json, method, eps, n_boundary, out, svg_path):
    """Find inscribed squares"""
    config = ctx.obj['config'].updated(_overrides('oracle', n_boundary=n_boundary, eps=eps))
    spec, body = _load_body(config, shape, shape_json)
    verify_eps = eps if eps is not None else 1e-5 * body.diameter

    results: Dict[str, Any] = {}
    timing = {}
    pipeline = None
    if method in ('table', 'both'):
        started = time.perf_counter()
        try:
            pipeline = inscribe_via_table(body, config)
            results['table'] = inscribed_dict(pipeline, verify_inscribed(body, pipeline.square, verify_eps))
        except NotObtuse as e:
            if method == 'table':
                raise
            logger.warning(f"Table pipeline not applicable, using the oracle only: {e}")
            results['table'] = {'error': 'NotObtuse', 'message': str(e)}
        timing['table'] = time.perf_counter() - started

    squares = []
    if method in ('oracle', 'both'):
        started = time.perf_counter()
        squares = oracle_inscribed_squares(body, config.oracle.n_boundary, config.oracle.eps)
        results['oracle'] = {
            'count': len(squares),
            'squares': [dict(square_dict(sq), max_boundary_distance=float(body.boundary_distance(sq.vertex_array()).max()))
                        for sq in squares],
        }
        timing['oracle'] = time.perf_counter() - started

    if pipeline is not None and squares:
        match = closest_square(pipeline.square, squares)
        results['agreement'] = {'closest_oracle_square': square_dict(match),
                                'mismatch': square_mismatch(pipeline.square, match)}

    report = RunReport(
        command='inscribe',
        input={'shape': spec.to_dict(), 'method': method, 'eps': eps},
        config=config.as_dict(),
        results=results,
        timing=timing,
    )

    if svg_path:
        figure = Figure(body, title=f"inscribe: {spec.kind}")
        for i, sq in enumerate(squares[:8]):
            figure.add_square(sq, f"oracle square {i} (side {sq.side:.4g})", COLORS['witness'], dashed=True)
        if pipeline is not None:
            figure.add_square(pipeline.level_square, f"level square (y = {pipeline.pipeline_trace['y']:.4g})",
                              COLORS['level'])
            figure.add_square(pipeline.square, f"inscribed square (side {pipeline.square.side:.4g})")
        figure.save(svg_path)

    _emit(report, out)


@cli.command()
@shape_options
@click.option('--field', 'field_path', type=click.Path(), help='Grid height field JSON (default: tabletop)')
@click.option('--side', type=float, required=True, help='Side length of the table')
@click.option('--start-grid', type=int, help='Start centers per axis')
@click.option('--start-rotations', type=int, help='Start rotations per center')
@click.option('--max-iters', type=int, help='Iteration budget per start')
@click.option('--level-tol', type=float, help='Accepted spread of the four leg heights')
@click.option('--allow-trivial/--no-trivial', default=True, show_default=True,
              help='Accept solutions with every leg at height 0')
@report_options
@click.pass_context
@handle_errors
def table(ctx, shape, shape_json, field_path, side, start_grid, start_rotations, max_iters, level_tol,
          allow_trivial, out, svg_path):
    """Solve the table problem: a level square of the given side"""
    config = ctx.obj['config'].updated(_overrides(
        'table', start_grid=start_grid, start_rotations=start_rotations, max_iters=max_iters, level_tol=level_tol))
    tb = config.table

    grid = load_grid_file(field_path) if field_path else None
    if shape or shape_json:
        spec, body = _load_body(config, shape, shape_json)
        shape_echo = spec.to_dict()
    elif grid is not None:
        x0, y0, x1, y1 = grid.bbox
        body = ConvexBody.from_points([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
        shape_echo = {'kind': 'polygon', 'vertices': [list(v.as_tuple()) for v in body.vertices]}
    else:
        raise InputError("A shape or a --field grid is required")

    field = field_from_grid(body, grid) if grid is not None else tabletop(body)

    started = time.perf_counter()
    level = solve_table(field, side, tb.start_grid, tb.start_rotations, tb.max_iters, tb.level_tol, tb.penalty,
                        allow_trivial=allow_trivial)
    timing = {'solve_table': time.perf_counter() - started}

    report = RunReport(
        command='table',
        input={'shape': shape_echo, 'field': field.kind.value, 'field_path': field_path, 'side': side},
        config=config.as_dict(),
        results={'level_square': level_square_dict(level)},
        timing=timing,
    )

    if svg_path:
        figure = Figure(body, title=f"table: side {side:g}")
        figure.add_square(level.square, f"level square (y = {level.y:.4g})", COLORS['level'])
        figure.save(svg_path)

    _emit(report, out)


@cli.command()
@shape_options
@click.option('--point', help='Boundary point "x,y"')
@click.option('--auto', is_flag=True, help='Use the vertex with the smallest interior angle')
@click.option('--side', type=float, required=True, help='Side length of the trivial square')
@click.option('--resolution', type=int, default=360, show_default=True,
              help='Sampled ray directions for the arc cross-check')
@report_options
@click.pass_context
@handle_errors
def witness(ctx, shape, shape_json, point, auto, side, resolution, out, svg_path):
    """Trivial square at a boundary point with a narrow tangent cone"""
    config = ctx.obj['config']
    spec, body = _load_body(config, shape, shape_json)

    if bool(point) == bool(auto):
        raise InputError("Give exactly one of --point or --auto")
    if auto:
        x = body.vertices[int(np.argmin(body.interior_angles))]
    else:
        parsed = parse_point(point)
        if parsed is None:
            raise InputError(f"--point must be 'x,y', got '{point}'")
        x = Point2(*parsed)

    started = time.perf_counter()
    arc = direction_arc(body, x, resolution)
    sq = trivial_square_at(body, x, side)
    verified = verify_trivial_square(body, sq, side)
    timing = {'witness': time.perf_counter() - started}

    report = RunReport(
        command='witness',
        input={'shape': spec.to_dict(), 'point': [x.x, x.y], 'auto': auto, 'side': side},
        config=config.as_dict(),
        results={'arc': arc_dict(arc), 'square': square_dict(sq), 'verified': verified},
        timing=timing,
    )

    if svg_path:
        figure = Figure(body, title=f"witness: {spec.kind}")
        figure.add_sector(TruncatedSector(x, Point2.polar(0.25 * body.diameter, arc.phi), arc.width),
                          f"direction arc (width {arc.width:.4g} rad)")
        figure.add_square(sq, f"trivial square (side {side:g})", COLORS['witness'])
        figure.add_point(x, "base point")
        figure.save(svg_path)

    _emit(report, out)


@cli.command()
@click.pass_context
def info(ctx):
    """Show the effective configuration"""
    config = ctx.obj['config']

    click.echo(line_separator("squarepeg Configuration"))
    for section, values in config.as_dict().items():
        click.echo(f"[{section}]")
        for key, value in values.items():
            click.echo(f"  {key}: {value}")


def main():
    """Main entry point"""
    cli()


if __name__ == '__main__':
    main()
