"""
Sector radius function, obtuseness verdicts and s*
"""
import math
import time

import numpy as np
import pytest

from squarepeg.errors import InputError, PointOutsideBody
from squarepeg.geometry import HALF_PI, Point2, Square, TruncatedSector, sector_contains
from squarepeg.obtuseness import (
    angle_criterion,
    boundary_profile,
    f_delta,
    is_obtuse,
    lsc_probe,
    s_star,
    s_star_search,
    sector_radii,
    square_hits_sector_interior,
)
from squarepeg.shapes import regular_ngon
from tests.test_data import random_bodies, random_member_points


class TestSectorRadius:

    def test_square_corner_is_zero(self, unit_square):
        value, cert = f_delta(unit_square, Point2(0, 0), 1e-3)
        assert value == 0.0
        assert cert is None

    def test_square_edge_point(self, unit_square):
        value, cert = f_delta(unit_square, Point2(0.5, 0), 1e-3)
        assert value > 0.4
        assert sector_contains(unit_square, cert.sector())
        assert cert.theta == pytest.approx(HALF_PI + 1e-3)

    def test_disk_boundary_point(self, disk):
        value, cert = f_delta(disk, Point2(1, 0), 1e-3)
        assert value == pytest.approx(math.sqrt(2), abs=0.02)
        assert sector_contains(disk, cert.sector())

    def test_disk_center(self, disk):
        value, _ = f_delta(disk, Point2(0, 0), 1e-3)
        assert value == pytest.approx(1.0, abs=1e-3)

    def test_pentagon_vertex_positive(self, pentagon):
        value, cert = f_delta(pentagon, pentagon.vertices[0], 1e-3)
        assert value > 0
        assert sector_contains(pentagon, cert.sector())

    def test_exterior_point(self, unit_square):
        with pytest.raises(PointOutsideBody):
            f_delta(unit_square, Point2(2, 2), 1e-3)

    def test_bad_delta(self, unit_square):
        with pytest.raises(InputError):
            f_delta(unit_square, Point2(0.5, 0.5), 0.0)

    def test_certificates_are_contained(self, rng):
        for body in random_bodies(3, 8):
            points = np.vstack([random_member_points(body, rng, 5), body.boundary_points(7), body.xy])
            for p in points:
                value, cert = f_delta(body, Point2.from_array(p), 1e-2)
                if value > 0:
                    assert sector_contains(body, cert.sector())
                    assert cert.radius == pytest.approx(value)

    def test_refinement_never_lowers_the_grid_value(self, rng):
        for body in random_bodies(5, 5, "obtuse"):
            for p in np.vstack([random_member_points(body, rng, 4), body.boundary_points(4)]):
                x = Point2.from_array(p)
                coarse, _ = f_delta(body, x, 1e-3, refine=False)
                refined, cert = f_delta(body, x, 1e-3)
                assert refined >= coarse
                assert sector_contains(body, cert.sector())

    def test_interior_value_at_least_clearance(self, rng):
        for body in random_bodies(7, 20):
            for p in random_member_points(body, rng, 5):
                clearance = float(body.inside_distances(p).min())
                assert f_delta(body, Point2.from_array(p), 1e-3)[0] >= clearance * (1 - 1e-12)

    def test_batched_radii_match(self, pentagon):
        apexes = np.array([[0.0, 0.0], [0.1, 0.2]])
        orientations = np.linspace(0, 2 * math.pi, 9)
        batched = sector_radii(pentagon, apexes, orientations, HALF_PI + 0.01)
        per_point = sector_radii(pentagon, apexes, np.tile(orientations, (2, 1)), HALF_PI + 0.01)
        assert per_point == pytest.approx(batched, rel=1e-12)
        for i, apex in enumerate(apexes):
            for j, a in enumerate(orientations):
                single = sector_radii(pentagon, apex[None, :], np.array([a]), HALF_PI + 0.01)
                assert batched[i, j] == pytest.approx(single[0, 0])


class TestInvariance:

    def test_translation(self, rng):
        body = next(random_bodies(17, 1, "obtuse"))
        shift = Point2(3.5, -1.25)
        moved = body.translated(shift)
        for p in random_member_points(body, rng, 10):
            x = Point2.from_array(p)
            assert f_delta(moved, x + shift, 1e-3)[0] == pytest.approx(f_delta(body, x, 1e-3)[0], rel=1e-9, abs=1e-12)

    def test_scale(self, rng):
        body = next(random_bodies(19, 1, "obtuse"))
        k = 2.5
        big = body.scaled(k)
        for p in random_member_points(body, rng, 10):
            x = Point2.from_array(p)
            assert f_delta(big, x * k, 1e-3)[0] == pytest.approx(k * f_delta(body, x, 1e-3)[0], rel=1e-9, abs=1e-12)

    def test_rotation(self, pentagon, rng):
        beta = 0.37
        turned = pentagon.rotated(beta)
        for p in np.vstack([random_member_points(pentagon, rng, 10), pentagon.xy, pentagon.boundary_points(5)]):
            x = Point2.from_array(p)
            assert f_delta(turned, x.rotated(beta), 1e-3)[0] == pytest.approx(f_delta(pentagon, x, 1e-3)[0],
                                                                             rel=1e-6, abs=1e-9)

    def test_s_star_translation(self):
        body = next(random_bodies(21, 1, "obtuse"))
        moved = body.translated(Point2(-2.0, 5.5))
        assert s_star(moved, grid=24) == pytest.approx(s_star(body, grid=24), rel=1e-6)

    def test_s_star_scale(self):
        body = regular_ngon(6)
        assert s_star(body.scaled(3.0), grid=24) == pytest.approx(3.0 * s_star(body, grid=24), rel=1e-6)

    def test_monotone_in_delta(self, rng):
        deltas = [1e-1, 1e-2, 1e-3, 1e-4]
        for body in random_bodies(23, 20, "obtuse"):
            points = np.vstack([random_member_points(body, rng, 3), body.boundary_points(2)])
            for p in points:
                values = [f_delta(body, Point2.from_array(p), d)[0] for d in deltas]
                tol = 1e-6 * body.diameter
                assert all(a <= b + tol for a, b in zip(values, values[1:]))


class TestObtuseness:

    @pytest.mark.parametrize("n", [3, 4])
    def test_small_ngons_not_obtuse(self, n):
        report = is_obtuse(regular_ngon(n), 1e-3)
        assert not report.obtuse
        assert not report.angle_verdict
        assert report.worst_value == 0.0

    @pytest.mark.parametrize("n", range(5, 13))
    def test_ngons_obtuse(self, n):
        report = is_obtuse(regular_ngon(n), 1e-3)
        assert report.obtuse
        assert report.angle_verdict
        assert not report.disagreement

    def test_report_contents(self, pentagon):
        report = is_obtuse(pentagon, 1e-3, boundary_samples=20)
        assert len(report.per_point) == 25
        assert [ev.kind for ev in report.per_point[:5]] == ["vertex"] * 5
        assert report.worst_value == min(ev.value for ev in report.per_point)
        assert all(ev.certificate is not None for ev in report.per_point)

    def test_too_few_boundary_samples(self, pentagon):
        with pytest.raises(InputError):
            is_obtuse(pentagon, 1e-3, boundary_samples=3)

    def test_ellipse_obtuse(self, ellipse):
        assert is_obtuse(ellipse, 1e-3).obtuse

    def test_agrees_with_angle_criterion(self):
        for body in random_bodies(29, 200):
            if np.min(np.abs(body.interior_angles - HALF_PI)) < 0.01:
                continue
            report = is_obtuse(body, 1e-3)
            assert report.obtuse == angle_criterion(body, 1e-3)

    def test_classification_runtime(self):
        started = time.perf_counter()
        for n in range(3, 13):
            assert is_obtuse(regular_ngon(n), 1e-3).obtuse == (n >= 5)
        for body in random_bodies(37, 200):
            is_obtuse(body, 1e-3, boundary_samples=max(256, body.n))
        assert time.perf_counter() - started < 30.0


class TestSStar:

    def test_disk(self, disk):
        assert s_star(disk, 1e-3) == pytest.approx(1.0, abs=0.02)

    def test_square_is_zero(self, unit_square):
        result = s_star_search(unit_square, 1e-3, grid=16)
        assert result.value == 0.0

    def test_reuses_boundary_report(self, pentagon):
        report = is_obtuse(pentagon, 1e-3, boundary_samples=64)
        fresh = s_star_search(pentagon, 1e-3, grid=32, boundary_samples=64)
        reused = s_star_search(pentagon, 1e-3, grid=32, boundary_samples=64, boundary_report=report)
        assert reused.value == pytest.approx(fresh.value, rel=1e-6)

    def test_pentagon_positive(self, pentagon):
        result = s_star_search(pentagon, 1e-3, grid=32)
        assert result.value > 0
        assert result.evaluations > 0
        assert pentagon.member_mask(result.minimizer.as_array())

    def test_bad_grid(self, pentagon):
        with pytest.raises(InputError):
            s_star_search(pentagon, grid=2)


class TestLowerSemicontinuity:

    def test_holds_at_random_points(self, rng):
        for body in random_bodies(31, 20):
            radii = [r * body.diameter for r in (0.1, 0.05, 0.01, 0.001)]
            points = np.vstack([random_member_points(body, rng, 3), body.boundary_points(2)])
            for p in points:
                result = lsc_probe(body, Point2.from_array(p), 0.05 * body.diameter, 1e-3, radii)
                assert not result.failure
                assert result.radius > 0
                assert len(result.per_radius) == 4

    def test_radii_must_descend(self, pentagon):
        with pytest.raises(InputError):
            lsc_probe(pentagon, Point2(0, 0), 0.1, 1e-3, [0.01, 0.1])


class TestSupplements:

    def test_sector_forbids_small_trivial_squares(self, pentagon, rng):
        for p in np.vstack([pentagon.xy, pentagon.boundary_points(10)]):
            x = Point2.from_array(p)
            value, cert = f_delta(pentagon, x, 1e-2)
            sec = cert.sector()
            for rotation in rng.uniform(0, HALF_PI, size=10):
                sq = Square(x, 0.99 * math.sqrt(2) * value, rotation)
                assert square_hits_sector_interior(sec, sq)

    def test_sector_miss(self):
        sec = TruncatedSector(Point2(0, 0), Point2(1, 0), 0.5)
        assert not square_hits_sector_interior(sec, Square(Point2(5, 5), 0.1, 0.0))

    def test_boundary_profile(self, pentagon):
        rows = boundary_profile(pentagon, 1e-3, 10)
        assert len(rows) == 10
        assert rows[0][0] == 0.0
        assert rows[1][0] == pytest.approx(pentagon.perimeter / 10)
        assert all(row[3] > 0 for row in rows)
