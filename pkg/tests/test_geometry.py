"""
Geometry value types, convex bodies and their predicates
"""
import math

import numpy as np
import pytest

from squarepeg.errors import DegenerateBody, InputError, InvalidSector, InvalidSide, OriginNotInterior
from squarepeg.geometry import (
    HALF_PI,
    ConvexBody,
    Point2,
    PointClass,
    Square,
    TruncatedSector,
    classify_point,
    diameter,
    gauge,
    quarter_turn_distance,
    radial_scale,
    sector_contains,
    tangent_cone,
    wrap_angle,
)
from tests.test_data import random_bodies, random_member_points


class TestPrimitives:

    def test_point_arithmetic(self):
        p, q = Point2(1, 2), Point2(3, -1)
        assert p + q == Point2(4, 1)
        assert q - p == Point2(2, -3)
        assert 2 * p == Point2(2, 4)
        assert p.dot(q) == 1
        assert p.cross(q) == -7
        assert Point2(3, 4).norm() == 5

    def test_point_rejects_non_finite(self):
        with pytest.raises(InputError):
            Point2(float('nan'), 0)

    def test_wrap_angle_range(self):
        assert wrap_angle(-1e-18) in (0.0, pytest.approx(2 * math.pi))
        assert wrap_angle(-HALF_PI) == pytest.approx(3 * HALF_PI)
        assert 0 <= wrap_angle(7 * math.pi) < 2 * math.pi

    def test_quarter_turn_distance(self):
        assert quarter_turn_distance(0.0, HALF_PI) == pytest.approx(0.0, abs=1e-15)
        assert quarter_turn_distance(0.1, HALF_PI - 0.1) == pytest.approx(0.2)

    def test_square_vertices(self):
        sq = Square(Point2(0, 0), 2.0, 0.0)
        verts = sq.vertex_array()
        assert verts == pytest.approx(np.array([[1, 1], [-1, 1], [-1, -1], [1, -1]]))

    def test_square_rotation_normalized(self):
        a = Square(Point2(0.3, -0.2), 1.5, 0.2)
        b = Square(Point2(0.3, -0.2), 1.5, 0.2 + 3 * HALF_PI)
        assert b.rotation == pytest.approx(0.2)
        assert sorted(map(tuple, np.round(a.vertex_array(), 12))) == sorted(map(tuple, np.round(b.vertex_array(), 12)))

    def test_square_rejects_bad_side(self):
        with pytest.raises(InvalidSide):
            Square(Point2(0, 0), 0.0)
        with pytest.raises(InvalidSide):
            Square(Point2(0, 0), -1.0)

    def test_square_from_vertices(self):
        sq = Square(Point2(1, 2), 0.7, 0.4)
        rebuilt = Square.from_vertices(sq.vertices())
        assert rebuilt.center.distance(sq.center) < 1e-12
        assert rebuilt.side == pytest.approx(sq.side)
        assert quarter_turn_distance(rebuilt.rotation, sq.rotation) < 1e-12

    def test_sector_validation(self):
        with pytest.raises(InvalidSector):
            TruncatedSector(Point2(0, 0), Point2(0, 0), 1.0)
        with pytest.raises(InvalidSector):
            TruncatedSector(Point2(0, 0), Point2(1, 0), 0.0)
        with pytest.raises(InvalidSector):
            TruncatedSector(Point2(0, 0), Point2(1, 0), math.pi + 0.01)

    def test_sector_endpoints(self):
        sec = TruncatedSector(Point2(1, 1), Point2(2, 0), HALF_PI)
        a, b = sec.arc_endpoints()
        assert a == Point2(3, 1)
        assert b.x == pytest.approx(1.0)
        assert b.y == pytest.approx(3.0)


class TestConvexBody:

    def test_from_points_orients_counterclockwise(self):
        body = ConvexBody.from_points([(0, 0), (0, 1), (1, 1), (1, 0)])
        assert body.area == pytest.approx(1.0)
        assert body.n == 4

    def test_from_points_drops_interior_and_collinear(self):
        body = ConvexBody.from_points([(0, 0), (0.5, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5), (0, 0)])
        assert body.n == 4

    @pytest.mark.parametrize("points", [
        [(0, 0), (1, 1)],
        [(0, 0), (1, 1), (2, 2), (3, 3)],
        [(1, 1), (1, 1), (1, 1)],
    ])
    def test_degenerate_input(self, points):
        with pytest.raises(DegenerateBody):
            ConvexBody.from_points(points)

    def test_constructor_rejects_clockwise(self):
        with pytest.raises(DegenerateBody):
            ConvexBody((Point2(0, 0), Point2(0, 1), Point2(1, 1), Point2(1, 0)))

    def test_measures(self, unit_square):
        assert unit_square.perimeter == pytest.approx(4.0)
        assert unit_square.centroid.distance(Point2(0.5, 0.5)) < 1e-12
        assert diameter(unit_square) == pytest.approx(math.sqrt(2))
        assert unit_square.bbox == pytest.approx((0, 0, 1, 1))
        assert unit_square.interior_angles == pytest.approx(np.full(4, HALF_PI))

    def test_transforms(self, pentagon):
        moved = pentagon.translated(Point2(3, -2))
        assert moved.area == pytest.approx(pentagon.area)
        assert moved.centroid.distance(pentagon.centroid + Point2(3, -2)) < 1e-12
        assert pentagon.scaled(2.0).area == pytest.approx(4 * pentagon.area)
        assert pentagon.rotated(0.3).perimeter == pytest.approx(pentagon.perimeter)

    def test_tol_factor(self, unit_square):
        loose = unit_square.with_tol_factor(0.1)
        assert loose.tol == pytest.approx(0.1 * math.sqrt(2))
        assert classify_point(unit_square, Point2(0.5, 0.01)) is PointClass.INTERIOR
        assert classify_point(loose, Point2(0.5, 0.01)) is PointClass.BOUNDARY
        assert loose.translated(Point2(1, 1)).tol_factor == 0.1
        assert loose.scaled(2.0).tol_factor == 0.1
        assert loose.rotated(0.4).tol_factor == 0.1
        with pytest.raises(DegenerateBody):
            unit_square.with_tol_factor(-1.0)

    def test_classify_point(self, unit_square):
        assert classify_point(unit_square, Point2(0.5, 0.5)) is PointClass.INTERIOR
        assert classify_point(unit_square, Point2(0.5, 0.0)) is PointClass.BOUNDARY
        assert classify_point(unit_square, Point2(0.0, 0.0)) is PointClass.BOUNDARY
        assert classify_point(unit_square, Point2(1.5, 0.5)) is PointClass.EXTERIOR
        assert classify_point(unit_square, Point2(0.5, -1e-12)) is PointClass.BOUNDARY
        assert classify_point(unit_square, Point2(0.5, -1e-6)) is PointClass.EXTERIOR

    def test_classify_many_matches_scalar(self, pentagon, rng):
        pts = rng.uniform(-1.2, 1.2, size=(200, 2))
        many = pentagon.classify_many(pts)
        assert all(many[i] is classify_point(pentagon, Point2.from_array(p)) for i, p in enumerate(pts))

    def test_boundary_points_lie_on_boundary(self, pentagon):
        pts = pentagon.boundary_points(100)
        assert pentagon.boundary_distance(pts).max() < 1e-12
        assert np.all(pentagon.member_mask(pts))

    def test_boundary_distance(self, unit_square):
        d = unit_square.boundary_distance(np.array([[0.5, 0.5], [2.0, 0.5], [0.5, 0.1]]))
        assert d == pytest.approx([0.5, 1.0, 0.1])


class TestSectorContains:

    def test_corner_right_angle(self, unit_square):
        assert sector_contains(unit_square, TruncatedSector(Point2(0, 0), Point2(0.5, 0), HALF_PI))
        assert not sector_contains(unit_square, TruncatedSector(Point2(0, 0), Point2(0.5, 0), HALF_PI + 0.1))

    def test_edge_midpoint(self, unit_square):
        assert sector_contains(unit_square, TruncatedSector(Point2(0.5, 0), Point2(0.5, 0), math.pi))
        assert not sector_contains(unit_square, TruncatedSector(Point2(0.5, 0), Point2(0.6, 0), math.pi))

    def test_disk_center(self, disk):
        for angle in np.linspace(0, 2 * math.pi, 7):
            assert sector_contains(disk, TruncatedSector(Point2(0, 0), Point2.polar(0.99, angle), 3.0))
            assert not sector_contains(disk, TruncatedSector(Point2(0, 0), Point2.polar(1.01, angle), 0.1))

    def test_apex_outside(self, unit_square):
        assert not sector_contains(unit_square, TruncatedSector(Point2(-0.1, 0.5), Point2(0.01, 0), 0.1))

    def test_agrees_with_dense_sampling(self, rng):
        for body in random_bodies(11, 10):
            for apex in random_member_points(body, rng, 10):
                sec = TruncatedSector(Point2.from_array(apex), Point2.polar(rng.uniform(0.05, 1.0), rng.uniform(0, 6.3)),
                                      rng.uniform(0.2, math.pi))
                sampled = bool(np.all(body.member_mask(sec.sample_points(40, 60))))
                if sector_contains(body, sec):
                    assert sampled

    def test_monotone_under_shrinking(self, rng):
        checked = 0
        for body in random_bodies(5, 20):
            for apex in random_member_points(body, rng, 50):
                v = Point2.polar(rng.uniform(0.01, 1.5), rng.uniform(0, 2 * math.pi))
                theta = rng.uniform(0.1, math.pi)
                sec = TruncatedSector(Point2.from_array(apex), v, theta)
                if not sector_contains(body, sec):
                    continue
                checked += 1
                smaller = TruncatedSector(sec.apex, v * rng.uniform(0.1, 1.0), theta * rng.uniform(0.1, 1.0))
                assert sector_contains(body, smaller)
        assert checked > 0


class TestRadialFunctions:

    def test_radial_scale_disk(self, disk):
        for angle in np.linspace(0, 2 * math.pi, 13):
            rho = radial_scale(disk, Point2.polar(1.0, angle))
            assert math.cos(math.pi / 512) - 1e-12 <= rho <= 1.0 + 1e-12

    def test_radial_scale_square(self, centered_square):
        assert radial_scale(centered_square, Point2(1, 0)) == pytest.approx(1.0)
        assert radial_scale(centered_square, Point2(1, 1)) == pytest.approx(math.sqrt(2))

    def test_radial_scale_needs_interior_origin(self, unit_square):
        with pytest.raises(OriginNotInterior):
            radial_scale(unit_square, Point2(1, 0))

    def test_gauge_is_one_on_boundary(self, pentagon):
        pts = pentagon.boundary_points(50)
        assert gauge(pentagon, pts) == pytest.approx(np.ones(50))


class TestTangentCone:

    def test_square_corner(self, unit_square):
        phi, psi = tangent_cone(unit_square, Point2(0, 0))
        assert phi == pytest.approx(0.0)
        assert psi - phi == pytest.approx(HALF_PI)

    def test_edge_point(self, unit_square):
        phi, psi = tangent_cone(unit_square, Point2(0.5, 0))
        assert phi == pytest.approx(0.0)
        assert psi - phi == pytest.approx(math.pi)

    def test_interior_point(self, unit_square):
        assert tangent_cone(unit_square, Point2(0.5, 0.5)) is None
