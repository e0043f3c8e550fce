"""ECH capacities of balls, unions, flat codisc bundles and toric domains.

Balls are labelled by their capacity ``a`` rather than their radius, which
keeps every value rational.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .geometry import (
    GeometryError,
    StarPolygon,
    as_convex,
    as_fraction,
    as_point,
    convex_hull,
    cross,
    gauge,
    signed_area,
    sub,
    support,
)
from .surd import QuadNum, Sqrt, rational_sqrt, sqrt_bounds


class NonTerminating(RuntimeError):
    """A search or recursion exhausted its step budget."""


class NotInPositiveQuadrant(GeometryError):
    pass


class TailBoundFails(ValueError):
    """The ball is too large for the asymptotic tail comparison to ever hold."""


def _tri(d: int) -> int:
    return d * (d + 1) // 2


# --------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon; one vertex is a point, two a segment."""

    vertices: tuple[tuple[int, int], ...]


def lattice_hull(points: Iterable) -> LatticePolygon:
    """Convex hull of integer points, allowing points and segments."""
    pts = sorted({(int(x), int(y)) for x, y in points})
    if len(pts) <= 2:
        return LatticePolygon(tuple(pts))
    return LatticePolygon(tuple(_hull_vertices(pts)))


def _hull_vertices(pts):
    # pts sorted and distinct; returns CCW extreme points (2 if collinear)
    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and cross(sub(chain[-1], chain[-2]), sub(p, chain[-1])) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return [pts[0], pts[-1]]
    return hull


def lattice_count(L: LatticePolygon | Sequence) -> int:
    """Number of lattice points in the closed polygon, by Pick's formula."""
    vs = L.vertices if isinstance(L, LatticePolygon) else tuple(tuple(v) for v in L)
    if len(vs) == 1:
        return 1
    if len(vs) == 2:
        (x0, y0), (x1, y1) = vs
        return math.gcd(x1 - x0, y1 - y0) + 1
    n = len(vs)
    twice_area = 0
    boundary = 0
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        twice_area += a[0] * b[1] - a[1] * b[0]
        boundary += math.gcd(b[0] - a[0], b[1] - a[1])
    # Pick: A = I + B/2 - 1, count = I + B
    return (abs(twice_area) + boundary) // 2 + 1


@dataclass(frozen=True)
class WeightSequence:
    """``(head; weights)`` describing a toric domain by ball packing data."""

    head: Fraction
    weights: tuple[Fraction, ...] = ()

    def __post_init__(self):
        head = as_fraction(self.head)
        ws = tuple(sorted((as_fraction(w) for w in self.weights), reverse=True))
        if head <= 0:
            raise ValueError("head must be positive")
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        if ws and ws[0] > head:
            raise ValueError("a weight exceeds the head")
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "weights", ws)

    @property
    def weight_square_sum(self) -> Fraction:
        return sum((w * w for w in self.weights), Fraction(0))

    @property
    def volume_defect(self) -> Fraction:
        """``head**2 - sum(w**2)``; equals twice the area for decompositions."""
        return self.head * self.head - self.weight_square_sum

    def __str__(self):
        return f"({self.head}; {', '.join(str(w) for w in self.weights)})"


@dataclass(frozen=True)
class CapacitySequence:
    values: dict
    source: str

    def __getitem__(self, k):
        return self.values[k]


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Outcome of an exact ball embedding check.

    ``checked[k]`` records the inequality at k for ``k <= explicit_k_max``.
    ``tail_rule`` says how the remaining k are covered: ``"cauchy_schwarz"``
    (valid from ``tail_bound_k`` on) or ``"cremona"`` (an exact reduction
    certificate valid for every k).
    """

    target: WeightSequence
    ball: Fraction
    explicit_k_max: int
    checked: tuple[bool, ...]
    tail_bound_k: int | None
    verdict: str
    witness_k: int | None = None
    witness_lhs: Fraction | None = None
    witness_rhs: Fraction | None = None
    tail_rule: str = "cauchy_schwarz"

    @property
    def embeds(self) -> bool:
        return self.verdict == "embeds"


# --------------------------------------------------------------------------
# Balls and unions


def ball_capacity(a, k: int) -> Fraction:
    """``c_k(B(a)) = a*d`` with ``d`` the largest integer having ``d(d+1)/2 <= k``."""
    a = as_fraction(a)
    if k < 0:
        raise ValueError("k must be nonnegative")
    return a * _ball_degree(k)


def _ball_degree(k: int) -> int:
    # largest d with d(d+1)/2 <= k
    return (math.isqrt(8 * k + 1) - 1) // 2


def union_capacities(weights: Sequence, kmax: int) -> list[Fraction]:
    """``[c_0, ..., c_kmax]`` of a disjoint union of balls.

    Solved as a knapsack: item sizes ``d(d+1)/2``, values ``a*d``.  Each table
    entry is the best value with total size at most its index.
    """
    ws = [as_fraction(a) for a in weights]
    # integer DP on weights scaled by their common denominator
    L = math.lcm(*(a.denominator for a in ws)) if ws else 1
    best = [0] * (kmax + 1)
    for a in ws:
        step = int(a * L)
        new = best[:]
        d = 1
        while _tri(d) <= kmax:
            t, gain = _tri(d), step * d
            new[t:] = map(max, new[t:], [v + gain for v in best[: kmax + 1 - t]])
            d += 1
        best = new
    return [Fraction(v, L) for v in best]


def union_capacity(weights: Sequence, k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return union_capacities(weights, k)[k]


def ball_sequence(a, kmax: int) -> CapacitySequence:
    return CapacitySequence({k: ball_capacity(a, k) for k in range(kmax + 1)}, "ball")


def union_sequence(weights, kmax: int) -> CapacitySequence:
    return CapacitySequence(dict(enumerate(union_capacities(weights, kmax))), "union")


# --------------------------------------------------------------------------
# Flat codisc bundles


def _angle_cmp(u, v):
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    c = cross(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def lattice_perimeter(A: StarPolygon, L: LatticePolygon) -> Fraction:
    """A-perimeter: the sum of ``support(A, e)`` over the boundary edges of L."""
    vs = L.vertices
    if len(vs) == 1:
        return Fraction(0)
    if len(vs) == 2:
        e = sub(vs[1], vs[0])
        return support(A, e) + support(A, (-e[0], -e[1]))
    n = len(vs)
    return sum((support(A, sub(vs[(i + 1) % n], vs[i])) for i in range(n)), Fraction(0))


def _initial_candidates(k: int):
    """Segments and staircases with exactly k+1 lattice points."""
    for v in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2)]:
        yield lattice_hull([(0, 0), (k * v[0], k * v[1])])
    n = k + 1
    for a in range(2, n + 1):
        c, r = divmod(n, a)
        pts = [(i, j) for j in range(c) for i in range(a)] + [(i, c) for i in range(r)]
        for P in (pts, [(y, x) for x, y in pts]):
            L = lattice_hull(P)
            if lattice_count(L) == n:
                yield L


def flat_capacity_witness(A: StarPolygon, k: int, max_nodes: int = 5_000_000):
    """Minimal A-perimeter over lattice polygons with exactly k+1 lattice points.

    Returns ``(value, LatticePolygon)``.  Polygons are enumerated, up to
    translation, as closed sequences of lattice edge vectors in strictly
    increasing angular order starting from the origin.  Partial chains are
    pruned by perimeter (support functions are subadditive, so the
    remaining edges cost at least ``support(A, -partial_sum)``) and by the
    lattice count of their hull.
    """
    A = as_convex(A)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Fraction(0), LatticePolygon(((0, 0),))

    cache = {}

    def h(e):
        v = cache.get(e)
        if v is None:
            v = cache[e] = support(A, e)
        return v

    best, best_poly = None, None
    for L in _initial_candidates(k):
        ell = lattice_perimeter(A, L)
        if best is None or ell < best:
            best, best_poly = ell, L

    # A contains the diamond of radius rho, so h(e) >= rho * max(|x|, |y|)
    rho = 1 / max(gauge(A, ax) for ax in [(1, 0), (0, 1), (-1, 0), (0, -1)])
    R = math.floor(best / (2 * rho))
    vectors = [
        (x, y)
        for x in range(-R, R + 1)
        for y in range(-R, R + 1)
        if (x, y) != (0, 0) and h((x, y)) + h((-x, -y)) <= best
    ]
    vectors.sort(key=cmp_to_key(_angle_cmp))
    groups = []
    for v in vectors:
        if groups and _angle_cmp(groups[-1][0], v) == 0:
            groups[-1].append(v)
        else:
            groups.append([v])
    for g in groups:
        g.sort(key=lambda v: max(abs(v[0]), abs(v[1])))

    nodes = 0
    target = k + 1

    def dfs(gi, S, P, pts):
        nonlocal best, best_poly, nodes
        nodes += 1
        if nodes > max_nodes:
            raise NonTerminating("flat capacity search exceeded its node budget")
        for gj in range(gi, len(groups)):
            for e in groups[gj]:
                S2 = (S[0] + e[0], S[1] + e[1])
                P2 = P + h(e)
                if S2 == (0, 0):
                    if P2 < best:
                        L = lattice_hull(pts)
                        if lattice_count(L) == target:
                            best, best_poly = P2, L
                    continue
                if P2 + h((-S2[0], -S2[1])) >= best:
                    continue
                pts2 = pts + [S2]
                if lattice_count(lattice_hull(pts2)) > target:
                    continue
                dfs(gj + 1, S2, P2, pts2)

    for g0, grp in enumerate(groups):
        for e in grp:
            if h(e) + h((-e[0], -e[1])) >= best:
                continue
            if lattice_count(lattice_hull([(0, 0), e])) > target:
                continue
            dfs(g0 + 1, e, h(e), [(0, 0), e])
    return best, best_poly


def flat_capacity(A: StarPolygon, k: int) -> Fraction:
    """``c_k`` of the codisc bundle of the flat Finsler torus with unit ball A."""
    return flat_capacity_witness(A, k)[0]


def wulff_lower_bound(A: StarPolygon, k: int) -> Sqrt:
    """Wulff-type bound ``sqrt(2 * area(A) * (k - 1))`` for ``flat_capacity(A, k)``.

    It bounds the perimeter of every two-dimensional lattice polygon with
    k + 1 points.  A lattice segment costs ``2 k sys(A)`` instead, which
    is smaller for thin fibers: the bound holds for all k exactly when
    ``sys_ratio(A) >= 1/16``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    return Sqrt(2 * signed_area(A.vertices) * (k - 1))


# --------------------------------------------------------------------------
# Weight decompositions


def _chain_area(chain):
    # area between a decreasing chain from (0, h) to (w, 0) and the axes
    return abs(signed_area([(Fraction(0), Fraction(0))] + list(chain))) if len(chain) >= 2 else 0


def _concave_weights(chain, out, budget):
    stack = [chain]
    while stack:
        ch = stack.pop()
        if _chain_area(ch) == 0:
            continue
        budget[0] -= 1
        if budget[0] < 0:
            raise NonTerminating("weight expansion did not terminate within its budget")
        sums = [x + y for x, y in ch]
        c = min(sums)
        i1 = sums.index(c)
        i2 = len(sums) - 1 - sums[::-1].index(c)
        out.append(c)
        left = [(x, x + y - c) for x, y in ch[: i1 + 1]]
        right = [(x + y - c, y) for x, y in ch[i2:]]
        stack.append(right)
        stack.append(left)


def _corner_chain(points):
    """Lower-left chain of a convex body touching both axes, from the y-axis to the x-axis."""
    hull = list(convex_hull(points).vertices)
    on_y = [p for p in hull if p[0] == 0]
    on_x = [p for p in hull if p[1] == 0]
    ty = min(on_y, key=lambda p: p[1])
    tx = min(on_x, key=lambda p: p[0])
    if ty == tx:
        return []
    i = hull.index(ty)
    chain = [ty]
    while chain[-1] != tx:
        i = (i + 1) % len(hull)
        chain.append(hull[i])
    return chain


def weight_decomposition(omega, budget: int = 10_000) -> WeightSequence:
    """Ball packing data ``(b; w_1, ..., w_n)`` of a convex region in the quadrant.

    The region is first translated to touch both axes (this is a toric
    symplectomorphism).  ``b`` is the size of the smallest standard triangle
    containing it, and the three corner regions of the triangle minus the
    region are each brought to standard position by an integral affine map
    and expanded recursively into triangles.

    Raises:
        NotInPositiveQuadrant: a vertex has a negative coordinate.
        NonTerminating: the recursion exceeded ``budget`` steps.
    """
    pts = omega.vertices if isinstance(omega, StarPolygon) else [as_point(p) for p in omega]
    if any(x < 0 or y < 0 for x, y in pts):
        raise NotInPositiveQuadrant("region leaves the closed positive quadrant")
    mx, my = min(x for x, _ in pts), min(y for _, y in pts)
    pts = [(x - mx, y - my) for x, y in pts]
    b = max(x + y for x, y in pts)
    if b <= 0:
        raise GeometryError("degenerate region")
    corners = [
        lambda p: p,
        lambda p: (b - p[0] - p[1], p[1]),
        lambda p: (p[0], b - p[0] - p[1]),
    ]
    weights = []
    steps = [budget]
    for phi in corners:
        chain = _corner_chain([phi(p) for p in pts])
        _concave_weights(chain, weights, steps)
    return WeightSequence(b, tuple(weights))


# --------------------------------------------------------------------------
# Generalized convex toric domains


def _union_lookup(weights):
    table = [Fraction(0)]

    def U(n):
        nonlocal table
        if n >= len(table):
            size = max(n + 1, 2 * len(table))
            table = union_capacities(weights, size)
        return table[n]

    return U


def gen_toric_capacity(W: WeightSequence, k: int) -> Fraction:
    """``c_k = min over l >= k of c_l(B(b)) - c_{l-k}(union of B(w_i))``.

    The search over l stops once, past the point where the lower bound
    ``b(sqrt(2l + 9/4) - 3/2) - sqrt(2(l - k) * sum w_i^2)`` is increasing,
    that bound certifiably exceeds the incumbent.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Fraction(0)
    b, S = W.head, W.weight_square_sum
    if not W.weights:
        return ball_capacity(b, k)
    b2 = b * b
    if S >= b2:
        raise ValueError("weights exhaust the volume of the head ball")
    U = _union_lookup(W.weights)
    l_mono = (2 * b2 * k + Fraction(9, 4) * S) / (2 * (b2 - S))
    best = None
    l = k
    while True:
        val = ball_capacity(b, l) - U(l - k)
        if best is None or val < best:
            best = val
        if l >= l_mono:
            lo, _ = sqrt_bounds(2 * l + Fraction(9, 4), 10**9)
            _, hi = sqrt_bounds(2 * (l - k) * S, 10**9)
            if b * (lo - Fraction(3, 2)) - hi > best:
                break
        l += 1
    if best < 0:
        warnings.warn(f"negative capacity {best} clamped to 0 for {W}", RuntimeWarning)
        return Fraction(0)
    return best


def gen_toric_sequence(W: WeightSequence, kmax: int) -> CapacitySequence:
    return CapacitySequence({k: gen_toric_capacity(W, k) for k in range(kmax + 1)}, "gen_toric")


def tail_threshold(head, square_sum) -> int | None:
    """Least K with ``sqrt(2k S) <= b(sqrt(2k + 9/4) - 3/2)`` for every k >= K.

    Squaring twice reduces the comparison to ``k >= 9 b^2 S / (2 (b^2 - S)^2)``,
    so K is that bound rounded up.  None when ``S >= b^2``.
    """
    b2, S = Fraction(head) ** 2, Fraction(square_sum)
    c = b2 - S
    if c <= 0:
        return None
    return math.ceil(9 * b2 * S / (2 * c * c))


def _cremona_key(u, v):
    return (v - u).sign()


def cremona_embeds(head, weights, budget: int = 100_000) -> bool:
    """Exact ball packing test by Cremona reduction.

    The balls ``B(w_i)`` (Fractions or :class:`Sqrt`) embed into ``B(head)``
    iff the volume condition holds and repeatedly applying the Cremona move
    to ``b - w1 - w2 - w3 < 0`` ends at a nonnegative reduced vector.
    """
    radicands = {w.squared for w in weights if isinstance(w, Sqrt) and rational_sqrt(w.squared) is None}
    if len(radicands) > 1:
        raise ValueError("at most one irrational weight family is supported")
    D = radicands.pop() if radicands else Fraction(0)

    def q(x):
        if isinstance(x, Sqrt):
            r = rational_sqrt(x.squared)
            return QuadNum.of(r, D) if r is not None else QuadNum.of(x)
        return QuadNum.of(Fraction(x), D)

    b = q(head)
    ws = [q(w) for w in weights]
    vol = b.square()
    for w in ws:
        vol = vol - w.square()
    if vol.sign() < 0:
        return False
    for _ in range(budget):
        if any(w.sign() < 0 for w in ws):
            return False
        ws = sorted((w for w in ws if w.sign() != 0), key=cmp_to_key(_cremona_key))
        ws += [QuadNum.of(0, D)] * max(0, 3 - len(ws))
        delta = b - ws[0] - ws[1] - ws[2]
        if delta.sign() >= 0:
            return b.sign() >= 0
        b = b + delta
        if b.sign() <= 0:
            return False
        ws = [ws[0] + delta, ws[1] + delta, ws[2] + delta] + ws[3:]
    raise NonTerminating("Cremona reduction did not terminate")


def _scan(W, a, kmax):
    U = union_capacities(list(W.weights) + [a], kmax)
    checked, witness = [], None
    for k in range(kmax + 1):
        ok = U[k] <= ball_capacity(W.head, k)
        checked.append(ok)
        if not ok and witness is None:
            witness = k
    return U, tuple(checked), witness


def embed_ball_check(W: WeightSequence, a, explicit_k: int = 64, scan_limit: int = 4096) -> EmbeddingCertificate:
    """Decide whether ``B(a)`` embeds into the domain with weights W.

    The ECH criterion ``c_k(union of B(w_i) and B(a)) <= c_k(B(b))`` is
    checked for every k up to the tail threshold; past it the inequality
    follows from Cauchy-Schwarz.  When the volume is exactly filled there
    is no such threshold and an exact Cremona certificate covers all k.

    Raises:
        TailBoundFails: the volume is exceeded and no witness k was found
            up to ``scan_limit``.
    """
    a = as_fraction(a)
    if a <= 0:
        raise ValueError("ball capacity must be positive")
    b = W.head
    S = W.weight_square_sum + a * a
    K = tail_threshold(b, S)

    def obstructed(U, checked, witness, rule):
        return EmbeddingCertificate(
            W, a, len(checked) - 1, checked, K, "obstructed", witness,
            U[witness], ball_capacity(b, witness), rule,
        )

    if K is not None:
        U, checked, witness = _scan(W, a, K)
        if witness is not None:
            return obstructed(U, checked, witness, "cauchy_schwarz")
        return EmbeddingCertificate(W, a, K, checked, K, "embeds")

    U, checked, witness = _scan(W, a, explicit_k)
    if witness is None and S == b * b and cremona_embeds(b, list(W.weights) + [a]):
        return EmbeddingCertificate(W, a, explicit_k, checked, 0, "embeds", tail_rule="cremona")
    if witness is None:
        U, checked, witness = _scan(W, a, scan_limit)
    if witness is not None:
        return obstructed(U, checked, witness, "volume")
    raise TailBoundFails(
        f"sum of squares {S} >= head^2 {b * b}: sqrt(2k*{S}) <= {b}(sqrt(2k+9/4)-3/2) never holds"
    )


def _ratio_minimum(W: WeightSequence, K: int):
    """Min over ``1 <= k <= K``, ``d >= 1`` of ``(c_k(B(b)) - c_{k-t(d)}(U)) / d``."""
    U = union_capacities(W.weights, K)
    L = math.lcm(W.head.denominator, *(u.denominator for u in U))
    Ui = [int(u * L) for u in U]
    step = int(W.head * L)
    # best ratio kept as the integer pair (num, d), compared by cross-multiplying
    num, den, at = None, 1, None
    for k in range(1, K + 1):
        B = step * _ball_degree(k)
        d = 1
        while _tri(d) <= k:
            r = B - Ui[k - _tri(d)]
            if num is None or r * den < num * d:
                num, den, at = r, d, (k, d)
            d += 1
    return Fraction(num, den * L), at[0], at[1]


def gromov_width_witness(W: WeightSequence, max_k: int = 1 << 16):
    """Gromov width with its binding constraint.

    Returns ``(value, k, d)``: the ball of the returned capacity embeds, and
    for any larger ball the ECH inequality at ``k`` (with the new ball
    contributing ``d``) fails.  ``k`` and ``d`` are None when the volume
    bound is the binding one; the value is then a :class:`Sqrt` if
    irrational.
    """
    b, S = W.head, W.weight_square_sum
    vol2 = b * b - S
    if vol2 <= 0:
        return Fraction(0), None, None
    K = 64
    while K <= max_k:
        c, k, d = _ratio_minimum(W, K)
        if c * c >= vol2:
            cand = Sqrt(vol2).exact()
            if cremona_embeds(b, list(W.weights) + [cand]):
                return cand, None, None
            K *= 2
            continue
        Kc = tail_threshold(b, S + c * c)
        if Kc <= K:
            return c, k, d
        K = Kc
    raise NonTerminating("Gromov width search exceeded max_k")


def gromov_width(W: WeightSequence):
    """Capacity of the largest ball embedding into the domain with weights W."""
    return gromov_width_witness(W)[0]
