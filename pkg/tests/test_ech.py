import heapq
import itertools
import math
import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import B1, SQUARE, positive_rationals, symmetric_lattice_polygons
from fiberwise.ech import (
    NonTerminating,
    NotInPositiveQuadrant,
    TailBoundFails,
    WeightSequence,
    ball_capacity,
    ball_sequence,
    cremona_embeds,
    embed_ball_check,
    flat_capacity,
    flat_capacity_witness,
    gen_toric_capacity,
    gen_toric_sequence,
    gromov_width,
    gromov_width_witness,
    lattice_count,
    lattice_hull,
    lattice_perimeter,
    tail_threshold,
    union_capacities,
    union_capacity,
    union_sequence,
    weight_decomposition,
    wulff_lower_bound,
)
from fiberwise.geometry import area, convex_hull, make_convex_polygon
from fiberwise.reeb import sys, sys_ratio
from fiberwise.surd import Sqrt

W5 = WeightSequence(3, (1,) * 5)
W6 = WeightSequence(3, (1,) * 6)
Q = [(1, 0), (2, 1), (1, 2), (0, 1)]
A_PRIME = [(0, 0), (2, 1), (1, 2)]


# ---------------------------------------------------------------------------
# independent oracles


def ball_oracle(a, k):
    """(k+1)-th smallest element of the multiset {a(m+n) : m, n >= 0}."""
    vals = sorted(a * (m + n) for m in range(k + 2) for n in range(k + 2))
    return vals[k]


def union_oracle(weights, k):
    """Unpruned brute force over all d-tuples."""
    dmax = int((math.isqrt(8 * k + 1) - 1) // 2)
    best = F(0)
    for ds in itertools.product(range(dmax + 1), repeat=len(weights)):
        if sum(d * (d + 1) // 2 for d in ds) <= k:
            best = max(best, sum(F(a) * d for a, d in zip(weights, ds)))
    return best


def flat_oracle(A, k, R=3):
    """Min A-perimeter over hulls of (k+1)-point sets, anchored at the origin."""
    pts = [(x, y) for x in range(0, R + 1) for y in range(-R, R + 1) if (x, y) > (0, 0)]
    best = None
    for S in itertools.combinations(pts, k):
        L = lattice_hull([(0, 0), *S])
        if lattice_count(L) != k + 1:
            continue
        ell = lattice_perimeter(A, L)
        if best is None or ell < best:
            best = ell
    return best


def region_perimeter(omega, L):
    """Sum over edges of L of the support of omega at the outward edge normal."""
    vs = L.vertices
    total = 0
    if len(vs) < 2:
        return total
    for i in range(len(vs)):
        a, b = vs[i], vs[(i + 1) % len(vs)]
        u = (b[1] - a[1], a[0] - b[0])
        total += max(u[0] * x + u[1] * y for x, y in omega)
    return total


def toric_oracle(omega, k, R=3):
    """c_k of a convex toric domain as the least omega-perimeter of a lattice
    polygon with k + 1 points."""
    pts = [(x, y) for x in range(0, R + 1) for y in range(-R, R + 1) if (x, y) > (0, 0)]
    best = None
    for S in itertools.combinations(pts, k):
        L = lattice_hull([(0, 0), *S])
        if lattice_count(L) == k + 1:
            p = region_perimeter(omega, L)
            best = p if best is None else min(best, p)
    return best


def direct_count(vs):
    xs = [x for x, _ in vs]
    ys = [y for _, y in vs]
    n = len(vs)
    count = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if n == 1:
                inside = (x, y) == vs[0]
            elif n == 2:
                (x0, y0), (x1, y1) = vs
                inside = (x1 - x0) * (y - y0) == (y1 - y0) * (x - x0)
            else:
                inside = all(
                    (vs[(i + 1) % n][0] - vs[i][0]) * (y - vs[i][1]) - (vs[(i + 1) % n][1] - vs[i][1]) * (x - vs[i][0]) >= 0
                    for i in range(n)
                )
            count += inside
    return count


# ---------------------------------------------------------------------------


class TestBalls:
    def test_examples(self):
        assert ball_capacity(1, 1) == 1
        assert ball_capacity(3, 9) == 9
        assert ball_capacity(F(3, 2), 3) == 3

    @pytest.mark.parametrize("a", [F(1), F(3, 2), F(2), F(3)])
    def test_oracle(self, a):
        for k in range(51):
            assert ball_capacity(a, k) == ball_oracle(a, k)

    def test_union_examples(self):
        assert union_capacity([1] * 6, 6) == 6
        assert union_capacity([1, F(3, 2)], 2) == F(5, 2)
        for k in range(11):
            assert union_capacity([2], k) == ball_capacity(2, k)

    def test_sequences(self):
        for seq in (ball_sequence(F(3, 2), 30), union_sequence([1, F(1, 2), F(2, 3)], 30), gen_toric_sequence(W6, 12)):
            vals = [seq[k] for k in range(len(seq.values))]
            assert vals[0] == 0
            assert all(x <= y for x, y in zip(vals, vals[1:]))


@settings(max_examples=40, deadline=None)
@given(st.lists(positive_rationals(), min_size=1, max_size=4), st.integers(0, 20))
def test_union_matches_brute_force(weights, k):
    assert union_capacity(weights, k) == union_oracle(weights, k)


@settings(max_examples=40, deadline=None)
@given(st.lists(positive_rationals(), min_size=1, max_size=7), st.integers(0, 60))
def test_union_cauchy_schwarz(weights, k):
    v = union_capacity(weights, k)
    assert v * v <= 2 * k * sum(w * w for w in weights)


def test_union_cauchy_schwarz_unit_weights():
    ws = [1] * 6 + [F(3, 2)]
    table = union_capacities(ws, 200)
    assert all(table[k] ** 2 <= F(33, 2) * k for k in range(201))


class TestLatticeCount:
    def test_examples(self):
        assert lattice_count(lattice_hull([(0, 0), (1, 0), (0, 1)])) == 3
        assert lattice_count(lattice_hull([(0, 0), (2, 0)])) == 3
        assert lattice_count(lattice_hull([(0, 0), (2, 0), (2, 2), (0, 2)])) == 9
        assert lattice_count(lattice_hull([(4, 5)])) == 1


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(-10, 10), st.integers(-10, 10)), min_size=1, max_size=7))
def test_pick_matches_enumeration(points):
    L = lattice_hull(points)
    assert lattice_count(L) == direct_count(list(L.vertices))


class TestFlat:
    def test_examples(self):
        assert flat_capacity(B1, 1) == 2
        assert flat_capacity(B1, 2) == 3
        assert flat_capacity(SQUARE, 1) == 2

    def test_b1_k2_minimizer_is_unit_triangle(self):
        value, L = flat_capacity_witness(B1, 2)
        assert value == 3 and lattice_count(L) == 3 and len(L.vertices) == 3

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_against_subset_oracle(self, k):
        for A in (B1, SQUARE, make_convex_polygon([(2, 1), (-1, 1), (-2, -1), (1, -1)])):
            assert flat_capacity(A, k) == flat_oracle(A, k)

    def test_wulff_examples(self):
        assert wulff_lower_bound(B1, 2).squared == 4
        assert flat_capacity(B1, 2) ** 2 == 9
        assert wulff_lower_bound(B1, 1) == 0
        area4 = make_convex_polygon([(1, 1), (-1, 1), (-1, -1), (1, -1)]).scaled(F(1, 1))
        assert area(area4) == 4
        for k in range(1, 6):
            assert wulff_lower_bound(area4, k).squared == 8 * (k - 1)


@settings(max_examples=60, deadline=None)
@given(symmetric_lattice_polygons())
def test_flat_first_capacity_is_twice_sys(A):
    assert flat_capacity(A, 1) == 2 * sys(A)


@settings(max_examples=4, deadline=None)
@given(symmetric_lattice_polygons(box=4))
def test_wulff_or_segment_bound(A):
    # two-dimensional hulls obey the Wulff bound, segments cost 2k sys
    s = sys(A)
    for k in range(1, 11):
        c = flat_capacity(A, k)
        assert c * c >= min(wulff_lower_bound(A, k).squared, (2 * k * s) ** 2)
        assert c <= 2 * k * s


@settings(max_examples=4, deadline=None)
@given(symmetric_lattice_polygons(box=4))
def test_wulff_inequality_when_not_thin(A):
    if sys_ratio(A) < F(1, 16):
        return
    for k in range(1, 11):
        assert flat_capacity(A, k) ** 2 >= wulff_lower_bound(A, k).squared


def test_wulff_fails_for_thin_fibers():
    A = make_convex_polygon([(-1, -4), (1, -3), (1, 4), (-1, 3)])
    assert sys(A) == 1 and area(A) == 14 and sys_ratio(A) < F(1, 16)
    # the three-point segment from 0 to (0, 2) beats the bound
    assert flat_capacity(A, 2) == 4
    assert flat_capacity(A, 2) ** 2 < wulff_lower_bound(A, 2).squared


class TestWeights:
    def test_examples(self):
        assert weight_decomposition(Q) == WeightSequence(3, (1,) * 5)
        assert weight_decomposition(A_PRIME) == WeightSequence(3, (1,) * 6)
        assert weight_decomposition([(0, 0), (5, 0), (0, 5)]) == WeightSequence(5, ())

    def test_translated_square(self):
        assert weight_decomposition([(0, 0), (2, 0), (2, 2), (0, 2)]) == WeightSequence(4, (2, 2))

    def test_errors(self):
        with pytest.raises(NotInPositiveQuadrant):
            weight_decomposition([(-1, 0), (1, 0), (0, 1)])
        with pytest.raises(NonTerminating):
            weight_decomposition([(0, 0), (7, 0), (3, 5), (0, 2)], budget=1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=3, max_size=8))
def test_volume_accounting(points):
    try:
        H = convex_hull(points)
    except ValueError:
        return
    W = weight_decomposition(list(H.vertices))
    assert W.volume_defect == 2 * area(H)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), min_size=3, max_size=6),
    st.integers(1, 5),
)
def test_volume_accounting_rational(points, den):
    try:
        H = convex_hull([(F(x, den), F(y, den)) for x, y in points])
    except ValueError:
        return
    W = weight_decomposition(list(H.vertices))
    assert W.volume_defect == 2 * area(H)


class TestGenToric:
    def test_examples(self):
        assert gen_toric_capacity(W5, 1) == 2
        assert gen_toric_capacity(W6, 1) == 2
        assert gen_toric_capacity(W6, 3) == 3
        assert gen_toric_capacity(W6, 0) == 0

    @pytest.mark.parametrize(
        "omega",
        [A_PRIME, Q, [(0, 0), (3, 0), (0, 3)], [(0, 0), (2, 0), (2, 2), (0, 2)], [(1, 0), (3, 1), (2, 3), (0, 2)]],
    )
    def test_against_perimeter_oracle(self, omega):
        W = weight_decomposition(omega)
        for k in range(1, 5):
            assert gen_toric_capacity(W, k) == toric_oracle(omega, k)

    def test_ball_head_only(self):
        for k in range(20):
            assert gen_toric_capacity(WeightSequence(F(5, 2)), k) == ball_capacity(F(5, 2), k)

    def test_against_long_search(self):
        # the pruned l-loop agrees with a fixed long window
        for W in (W5, W6, WeightSequence(4, (2, 2)), WeightSequence(F(7, 2), (F(3, 2), 1, F(1, 2)))):
            table = union_capacities(W.weights, 400)
            for k in range(1, 15):
                brute = min(ball_capacity(W.head, l) - table[l - k] for l in range(k, 400))
                assert gen_toric_capacity(W, k) == brute


class TestEmbedding:
    def test_tail_threshold_six_unit_balls(self):
        K = tail_threshold(3, 6 + F(9, 4))
        assert K == 594
        # equality at 594: both sides equal 99
        assert math.isqrt(2 * 594 * 33 // 4) ** 2 == 2 * 594 * 33 // 4
        with mpmath.workdps(50):
            lhs = mpmath.sqrt(2 * 593 * mpmath.mpf(33) / 4)
            rhs = 3 * (mpmath.sqrt(2 * 593 + mpmath.mpf(9) / 4) - mpmath.mpf(3) / 2)
            assert lhs > rhs

    def test_six_unit_balls_embed(self):
        c = embed_ball_check(W6, F(3, 2))
        assert c.embeds and c.explicit_k_max >= 593 and all(c.checked)
        assert c.tail_bound_k <= c.explicit_k_max

    def test_larger_ball_obstructed(self):
        c = embed_ball_check(W6, F(3, 2) + F(1, 100))
        assert c.verdict == "obstructed"
        assert c.witness_k is not None and c.witness_k <= c.explicit_k_max
        assert c.witness_lhs > c.witness_rhs

    def test_full_filling(self):
        c = embed_ball_check(W5, 2)
        assert c.embeds and c.tail_rule == "cremona"

    def test_volume_exceeded(self):
        c = embed_ball_check(W5, F(21, 10))
        assert c.verdict == "obstructed"

    def test_tail_bound_fails(self):
        # volume exceeded, but the first witness (k = 2) lies past the scan
        with pytest.raises(TailBoundFails):
            embed_ball_check(WeightSequence(9, (F(1, 10),) * 6), 9, explicit_k=1, scan_limit=1)

    def test_cremona(self):
        assert cremona_embeds(3, [2, 1, 1, 1, 1, 1])
        assert not cremona_embeds(3, [F(3, 2) + F(1, 100)] + [1] * 6)
        assert cremona_embeds(3, [Sqrt(3) * F(1, 2)] + [1] * 6)
        assert not cremona_embeds(3, [2, 2])


class TestGromovWidth:
    def test_examples(self):
        assert gromov_width(W5) == 2
        assert gromov_width(W6) == F(3, 2)
        assert gromov_width(WeightSequence(F(7, 3))) == F(7, 3)
        assert gromov_width(WeightSequence(4, (2, 2))) == 2

    def test_witness(self):
        value, k, d = gromov_width_witness(W6)
        assert (value, k, d) == (F(3, 2), 9, 2)
        assert embed_ball_check(W6, value).embeds
        assert not embed_ball_check(W6, value + F(1, 1000)).embeds

    def test_small_k_obstruction(self):
        # at k = 2 the ball and one half-ball must fit under 3
        assert gromov_width_witness(WeightSequence(3, (F(1, 2),) * 8)) == (F(5, 2), 2, 1)

    def test_volume_bound_binding(self):
        # eight balls of size 3/4 fill the volume exactly
        assert gromov_width_witness(WeightSequence(3, (F(3, 4),) * 7)) == (F(9, 4), None, None)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=3, max_size=6))
def test_gromov_width_below_volume_and_ech(points):
    try:
        H = convex_hull(points)
    except ValueError:
        return
    W = weight_decomposition(list(H.vertices))
    w = gromov_width(W)
    assert w * w <= W.volume_defect if not isinstance(w, Sqrt) else w.squared <= W.volume_defect
    # a ball never beats the first ECH capacity
    assert w <= gen_toric_capacity(W, 1)
