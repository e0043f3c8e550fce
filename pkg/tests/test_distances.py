import math
import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import B1, SQUARE, random_star, star_polygons
from fiberwise.distances import (
    FloatPolygon,
    hbm_distance,
    inclusion_distance,
    pv_polygon,
    quadrant_star,
    qv_region,
)
from fiberwise.ech import NotInPositiveQuadrant
from fiberwise.geometry import NotStarShaped, area, convex_hull, make_star_polygon
from fiberwise.reeb import sys


def scaled(P, c):
    return make_star_polygon([(c * x, c * y) for x, y in P.vertices])


# ---------------------------------------------------------------------------
# containment oracle: exact point-in-polygon plus proper edge crossings


def _orient(a, b, c):
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(p, a, b):
    return _orient(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _inside(p, vs):
    n = len(vs)
    if any(_on_segment(p, vs[i], vs[(i + 1) % n]) for i in range(n)):
        return True
    wn = 0
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if a[1] <= p[1] < b[1] and _orient(a, b, p) > 0:
            wn += 1
        elif b[1] <= p[1] < a[1] and _orient(a, b, p) < 0:
            wn -= 1
    return wn != 0


def _contained(A, B):
    """A inside B for simple polygons given by vertex lists."""
    if not all(_inside(p, B) for p in A):
        return False
    for i in range(len(A)):
        a, b = A[i], A[(i + 1) % len(A)]
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        if not _inside(mid, B):
            return False
        for j in range(len(B)):
            c, d = B[j], B[(j + 1) % len(B)]
            o = [_orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)]
            if o[0] * o[1] < 0 and o[2] * o[3] < 0:
                return False
    return True


def mutual(A, B, C):
    a, b = list(A.vertices), list(B.vertices)
    Cb = [(C * x, C * y) for x, y in b]
    Ca = [(C * x, C * y) for x, y in a]
    return _contained(a, Cb) and _contained(b, Ca)


# ---------------------------------------------------------------------------


class TestExamples:
    def test_identity(self):
        d = inclusion_distance(B1, B1)
        assert d.C == 1 and d.log_value == 0 and d.exact

    def test_scaling(self):
        d = inclusion_distance(B1, scaled(B1, 2))
        assert d.C == 2 and d.log_value == pytest.approx(math.log(2))

    def test_cross_and_square(self):
        assert inclusion_distance(B1, SQUARE).C == 2
        assert inclusion_distance(SQUARE, B1).C == 2

    def test_modes(self):
        assert hbm_distance(B1, SQUARE).mode == "hbm_product"
        assert hbm_distance(B1, SQUARE, "product").C == 2
        omega = [(0, 0), (2, 0), (1, 1), (0, 2)]
        assert hbm_distance(omega, omega, "toric").C == 1
        with pytest.raises(ValueError):
            hbm_distance(B1, B1, "other")


@settings(max_examples=60, deadline=None)
@given(star_polygons(), star_polygons())
def test_against_containment_oracle(A, B):
    C = inclusion_distance(A, B).C
    assert mutual(A, B, C)
    assert not mutual(A, B, C - F(1, 10**6))


@settings(max_examples=60, deadline=None)
@given(star_polygons(), star_polygons(), star_polygons())
def test_pseudo_metric(A, B, Cp):
    dab, dba = inclusion_distance(A, B), inclusion_distance(B, A)
    assert inclusion_distance(A, A).C == 1
    assert dab.C == dba.C and dab.C >= 1
    # multiplicative form keeps the triangle inequality exact
    assert inclusion_distance(A, Cp).C <= dab.C * inclusion_distance(B, Cp).C


@settings(max_examples=40, deadline=None)
@given(star_polygons(), st.integers(1, 30), st.integers(1, 30))
def test_scaling_law(A, p, q):
    c = F(p, q)
    d = inclusion_distance(A, scaled(A, c))
    assert d.C == max(c, 1 / c)
    assert d.log_value == pytest.approx(abs(math.log(p / q)), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(star_polygons(), star_polygons())
def test_area_lower_bound(A, B):
    C = inclusion_distance(A, B).C
    q = area(A) / area(B)
    assert C * C >= max(q, 1 / q)


@settings(max_examples=40, deadline=None)
@given(star_polygons(), star_polygons())
def test_sys_lower_bound_convex(A, B):
    A, B = convex_hull(A.vertices), convex_hull(B.vertices)
    C = inclusion_distance(A, B).C
    r = sys(A) / sys(B)
    assert C >= max(r, 1 / r)


def test_sys_not_monotone_for_star_fibers():
    # a reflex vertex of B carries a short orbit, so sys(A) > C sys(B)
    A = make_star_polygon([(9, F(15, 2)), (0, F(15, 2)), (-4, -2), (-10, -10), (6, -5)])
    B = make_star_polygon([(3, 1), (5, 2), (F(-7, 4), F(7, 4)), (F(-3, 4), F(1, 2)), (-3, 0), (1, -3), (6, -2)])
    C = inclusion_distance(A, B).C
    assert C == F(70, 9) and mutual(A, B, C)
    assert sys(A) > C * sys(B)


class TestPv:
    def test_cross_polytope(self):
        P = pv_polygon([0, 0])
        target = [(1, 0), (0, 1), (-1, 0), (0, -1)]
        for (x, y), (u, w) in zip(P.vertices, target):
            assert abs(x - u) < 1e-25 and abs(y - w) < 1e-25

    def test_stretched(self):
        P = pv_polygon([math.log(2), 0])
        assert abs(P.vertices[0][0] - 2) < 1e-12
        assert abs(P.vertices[1][1] - 1) < 1e-25

    def test_hexagon(self):
        P = pv_polygon([0, 0, 0])
        assert len(P.vertices) == 6
        for x, y in P.vertices:
            assert abs(x * x + y * y - 1) < 1e-25

    def test_disparate_entries_stay_star_shaped(self):
        # neighbours are pi/N apart, so no choice of v breaks visibility
        P = pv_polygon([40, -40, 40, -40])
        assert len(P.vertices) == 8
        d = inclusion_distance(P, pv_polygon([0, 0, 0, 0]))
        assert abs(float(d.log_value) - 40) < 1e-9

    def test_too_short(self):
        with pytest.raises(ValueError):
            pv_polygon([0])

    def test_isometry(self):
        rng = random.Random(11)
        for _ in range(30):
            N = rng.randint(2, 6)
            v = [rng.uniform(-2, 2) for _ in range(N)]
            w = [rng.uniform(-2, 2) for _ in range(N)]
            d = inclusion_distance(pv_polygon(v), pv_polygon(w))
            assert not d.exact
            assert abs(float(d.log_value) - max(abs(a - b) for a, b in zip(v, w))) <= 1e-9

    def test_precision(self):
        v, w = [F(1, 3), F(-1, 2), 1], [0, 0, F(1, 7)]
        d = inclusion_distance(pv_polygon(v, 200), pv_polygon(w, 200), precision_bits=200)
        with mpmath.workprec(200):
            assert abs(d.log_value - mpmath.mpf(6) / 7) < mpmath.mpf(2) ** -150


class TestToric:
    def test_qv(self):
        rng = random.Random(5)
        for _ in range(30):
            N = rng.randint(2, 6)
            v = [rng.uniform(-1, 1) for _ in range(N)]
            w = [rng.uniform(-1, 1) for _ in range(N)]
            d = hbm_distance(qv_region(v), qv_region(w), "toric")
            assert d.mode == "hbm_toric"
            assert abs(float(d.log_value) - max(abs(a - b) for a, b in zip(v, w))) <= 1e-9

    def test_rational_regions(self):
        tri = [(0, 0), (1, 0), (0, 1)]
        big = [(0, 0), (3, 0), (0, 3)]
        sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
        assert hbm_distance(tri, big, "toric").C == 3
        assert hbm_distance(tri, sq, "toric").C == 2

    def test_errors(self):
        with pytest.raises(NotInPositiveQuadrant):
            quadrant_star([(0, 0), (1, -1), (0, 1)])
        with pytest.raises(NotStarShaped):
            quadrant_star([(1, 0), (2, 0), (1, 1)])
