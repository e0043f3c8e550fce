"""Exact rational planar geometry for the fibers of product domains.

Every coordinate is a :class:`fractions.Fraction`.  Polygons are stored
counterclockwise; a :class:`StarPolygon` is strictly star-shaped about the
origin, i.e. every edge is seen from the origin with positive signed area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple[Fraction, Fraction]


class GeometryError(ValueError):
    """Base class for invalid polygon input."""


class Degenerate(GeometryError):
    pass


class NotSimple(GeometryError):
    pass


class NotStarShaped(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected on purpose: a float coordinate silently breaks the
    exactness of everything downstream.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def as_point(pt) -> Point:
    x, y = pt
    return (as_fraction(x), as_fraction(y))


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class Direction:
    """A primitive integer vector ``(m, n)``."""

    m: int
    n: int

    def __post_init__(self):
        if (self.m, self.n) == (0, 0):
            raise ValueError("zero direction")
        if math.gcd(self.m, self.n) != 1:
            raise ValueError(f"({self.m}, {self.n}) is not primitive")

    @classmethod
    def of(cls, vec) -> "Direction":
        """The primitive integer vector positively proportional to ``vec``."""
        x, y = as_fraction(vec[0]), as_fraction(vec[1])
        if x == 0 and y == 0:
            raise ValueError("zero direction")
        scale = math.lcm(x.denominator, y.denominator)
        m, n = int(x * scale), int(y * scale)
        g = math.gcd(m, n)
        return cls(m // g, n // g)

    @property
    def vec(self) -> tuple[int, int]:
        return (self.m, self.n)

    def __neg__(self):
        return Direction(-self.m, -self.n)

    def __iter__(self):
        yield self.m
        yield self.n


def _segments_intersect(p1, p2, q1, q2) -> bool:
    d1 = cross(sub(p2, p1), sub(q1, p1))
    d2 = cross(sub(p2, p1), sub(q2, p1))
    d3 = cross(sub(q2, q1), sub(p1, q1))
    d4 = cross(sub(q2, q1), sub(p2, q1))
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True

    def on_seg(a, b, c):
        return (
            min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
        )

    return (
        (d1 == 0 and on_seg(p1, p2, q1))
        or (d2 == 0 and on_seg(p1, p2, q2))
        or (d3 == 0 and on_seg(q1, q2, p1))
        or (d4 == 0 and on_seg(q1, q2, p2))
    )


def signed_area(vertices: Sequence[Point]) -> Fraction:
    n = len(vertices)
    twice = sum(
        (cross(vertices[i], vertices[(i + 1) % n]) for i in range(n)), Fraction(0)
    )
    return twice / 2


@dataclass(frozen=True)
class StarPolygon:
    """Simple polygon, counterclockwise, strictly star-shaped about 0.

    Build instances with :func:`make_star_polygon`; the constructor itself
    does not validate.
    """

    vertices: tuple[Point, ...]

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            yield vs[i], vs[(i + 1) % n]

    def scaled(self, c) -> "StarPolygon":
        c = as_fraction(c)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return type(self)(tuple((c * x, c * y) for x, y in self.vertices))

    def translated(self, v) -> tuple[Point, ...]:
        """Translated vertex tuple (the result is generally not star-shaped)."""
        vx, vy = as_point(v)
        return tuple((x + vx, y + vy) for x, y in self.vertices)


@dataclass(frozen=True)
class ConvexPolygon(StarPolygon):
    """StarPolygon whose interior angles are all strictly convex."""


def make_star_polygon(vertices: Iterable) -> StarPolygon:
    """Validate ``vertices`` and return a counterclockwise StarPolygon.

    Raises:
        Degenerate: fewer than three vertices, repeated vertices or zero area.
        NotSimple: two non-adjacent edges meet.
        NotStarShaped: some edge is not strictly visible from the origin.
    """
    vs = [as_point(v) for v in vertices]
    if len(vs) < 3:
        raise Degenerate("a polygon needs at least 3 vertices")
    if len(set(vs)) != len(vs):
        raise Degenerate("repeated vertex")
    area = signed_area(vs)
    if area == 0:
        raise Degenerate("zero area")
    if area < 0:
        vs.reverse()
    n = len(vs)
    for i in range(n):
        a1, a2 = vs[i], vs[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or j == (i + 1) % n:
                continue
            if _segments_intersect(a1, a2, vs[j], vs[(j + 1) % n]):
                raise NotSimple(f"edges {i} and {j} intersect")
    for i in range(n):
        if cross(vs[i], vs[(i + 1) % n]) <= 0:
            raise NotStarShaped(
                f"edge {vs[i]} -> {vs[(i + 1) % n]} is not strictly visible from the origin"
            )
    return StarPolygon(tuple(vs))


def _turns(vs):
    n = len(vs)
    return [cross(sub(vs[i], vs[i - 1]), sub(vs[(i + 1) % n], vs[i])) for i in range(n)]


def is_convex(P: StarPolygon) -> bool:
    return all(t >= 0 for t in _turns(P.vertices))


def make_convex_polygon(vertices: Iterable) -> ConvexPolygon:
    """Like :func:`make_star_polygon`, additionally requiring strict convexity."""
    P = make_star_polygon(vertices)
    turns = _turns(P.vertices)
    if any(t < 0 for t in turns):
        raise NotConvex("reflex vertex")
    if any(t == 0 for t in turns):
        raise NotConvex("three collinear vertices")
    return ConvexPolygon(P.vertices)


def as_convex(P: StarPolygon) -> ConvexPolygon:
    """Drop collinear vertices of a convex StarPolygon and retag it."""
    if isinstance(P, ConvexPolygon):
        return P
    if not is_convex(P):
        raise NotConvex("polygon has a reflex vertex")
    vs = P.vertices
    turns = _turns(vs)
    return ConvexPolygon(tuple(v for v, t in zip(vs, turns) if t != 0))


def regular_polygon(n: int, radius=1, denominator: int = 10**6) -> StarPolygon:
    """Rational polygon approximating a regular ``n``-gon of given radius.

    Vertex coordinates are rounded to ``1/denominator``; use it as a
    stand-in for a round disc.
    """
    r = float(as_fraction(radius))
    pts = []
    for j in range(n):
        t = 2 * math.pi * j / n
        pts.append(
            (
                Fraction(round(r * math.cos(t) * denominator), denominator),
                Fraction(round(r * math.sin(t) * denominator), denominator),
            )
        )
    return make_star_polygon(pts)


def area(P: StarPolygon) -> Fraction:
    return signed_area(P.vertices)


def convex_hull(P: StarPolygon | Iterable) -> ConvexPolygon:
    """Exact convex hull (monotone chain), counterclockwise, no collinear points."""
    pts = P.vertices if isinstance(P, StarPolygon) else [as_point(p) for p in P]
    pts = sorted(set(pts))
    if len(pts) < 3:
        raise Degenerate("hull of fewer than 3 points")

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
        raise Degenerate("collinear points")
    if isinstance(P, StarPolygon):
        return ConvexPolygon(_rotate_canonical(hull, P.vertices))
    return ConvexPolygon(tuple(hull))


def _rotate_canonical(hull, original):
    # start the hull at the first original vertex it contains, for stable output
    hs = set(hull)
    for v in original:
        if v in hs:
            k = hull.index(v)
            return tuple(hull[k:] + hull[:k])
    return tuple(hull)


def support(C: StarPolygon, w) -> Fraction:
    """Support function ``max_{p in C} p . w`` (of the hull, for nonconvex C)."""
    w = (as_fraction(w[0]), as_fraction(w[1]))
    return max(dot(p, w) for p in C.vertices)


def _edge_hit(vertices, x):
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        if cross(a, x) >= 0 and cross(x, b) >= 0:
            return a, b
    raise AssertionError("ray misses the boundary of a star-shaped polygon")


def gauge(P: StarPolygon, x) -> Fraction:
    """Minkowski gauge: the ``t > 0`` with ``x / t`` on the boundary of P."""
    x = as_point(x)
    if x == (0, 0):
        return Fraction(0)
    a, b = _edge_hit(P.vertices, x)
    return cross(x, sub(b, a)) / cross(a, b)


def polar_dual(C: ConvexPolygon) -> ConvexPolygon:
    """Polar body ``{y : y . x <= 1 for all x in C}``; one vertex per edge of C."""
    C = as_convex(C)
    out = []
    for a, b in C.edges():
        c = cross(a, b)
        if c <= 0:
            raise OriginNotInterior("origin is not interior to the polygon")
        d = sub(b, a)
        out.append((d[1] / c, -d[0] / c))
    return ConvexPolygon(tuple(out))


def edge_normal(a, b) -> Direction:
    """Primitive outward normal of the counterclockwise edge ``a -> b``."""
    d = sub(b, a)
    return Direction.of((d[1], -d[0]))


def in_closed_arc(w, start, end) -> bool:
    """Is ``w`` in the short closed arc of directions between ``start`` and ``end``?"""
    c = cross(start, end)
    if c < 0:
        start, end = end, start
    elif c == 0:
        return cross(start, w) == 0 and dot(start, w) > 0
    return cross(start, w) >= 0 and cross(w, end) >= 0


def in_open_arc(w, start, end) -> bool:
    if cross(start, end) == 0:
        return False
    return (
        in_closed_arc(w, start, end)
        and not (cross(start, w) == 0 and dot(start, w) > 0)
        and not (cross(end, w) == 0 and dot(end, w) > 0)
    )


@dataclass(frozen=True)
class EdgeFeature:
    """An edge; its normal is a single rational direction."""

    index: int
    start: Point
    end: Point
    direction: Direction
    kind: str = "edge"

    @property
    def anchor(self) -> Point:
        return self.start

    def contains(self, w) -> bool:
        return cross(self.direction.vec, w) == 0 and dot(self.direction.vec, w) > 0


@dataclass(frozen=True)
class VertexFeature:
    """A vertex; after smoothing its normals sweep the short arc between the
    normals of the two adjacent edges.  The endpoints of the arc belong to
    the edges, so :meth:`contains` tests the open arc."""

    index: int
    point: Point
    arc_start: Direction
    arc_end: Direction
    reflex: bool
    kind: str = "vertex"

    @property
    def anchor(self) -> Point:
        return self.point

    def contains(self, w) -> bool:
        return in_open_arc(w, self.arc_start.vec, self.arc_end.vec)

    def contains_closed(self, w) -> bool:
        return in_closed_arc(w, self.arc_start.vec, self.arc_end.vec)

    def width(self) -> float:
        a, b = self.arc_start.vec, self.arc_end.vec
        return abs(math.atan2(cross(a, b), dot(a, b)))


def normal_features(P: StarPolygon) -> list:
    """Vertex and edge features in boundary order: v0, e0, v1, e1, ...

    Edge ``i`` runs from vertex ``i`` to vertex ``i+1``.
    """
    vs = P.vertices
    n = len(vs)
    normals = [edge_normal(vs[i], vs[(i + 1) % n]) for i in range(n)]
    feats = []
    for i in range(n):
        prev, nxt = normals[i - 1], normals[i]
        turn = cross(sub(vs[i], vs[i - 1]), sub(vs[(i + 1) % n], vs[i]))
        feats.append(VertexFeature(i, vs[i], prev, nxt, reflex=turn < 0))
        feats.append(EdgeFeature(i, vs[i], vs[(i + 1) % n], normals[i]))
    return feats


def is_centrally_symmetric(P: StarPolygon) -> bool:
    vs = set(P.vertices)
    return {(-x, -y) for x, y in vs} == vs


def is_axis_symmetric(P: StarPolygon) -> bool:
    """Invariant under both coordinate reflections."""
    vs = set(as_convex(P).vertices) if is_convex(P) else set(P.vertices)
    return {(x, -y) for x, y in vs} == vs and {(-x, y) for x, y in vs} == vs


def _product_ok(p, n) -> bool:
    return p[0] * n[0] >= 0 and p[1] * n[1] >= 0


def is_generalized_monotone(P: StarPolygon) -> bool:
    """Check ``(p1 n1, p2 n2) >= 0`` along the whole (smoothed) boundary."""
    axes = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    for f in normal_features(P):
        if f.kind == "edge":
            if not (_product_ok(f.start, f.direction.vec) and _product_ok(f.end, f.direction.vec)):
                return False
        else:
            probes = [f.arc_start.vec, f.arc_end.vec]
            probes += [a for a in axes if f.contains_closed(a)]
            if not all(_product_ok(f.point, n) for n in probes):
                return False
    return True
