"""Inclusion distance between star-shaped planar domains.

For star-shaped A and B the smallest C with ``A`` inside ``C B`` and ``B``
inside ``C A`` is found exactly: along each edge of A the gauge of B is
linear between the rays through vertices of B, so its maximum sits at a
vertex of A or where a vertex ray of B crosses the edge.  At the latter
point the gauge of B equals ``1 / gauge(A, vertex)``.

Rational polygons stay exact.  Polygons built from exponentials use mpmath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .ech import NotInPositiveQuadrant
from .geometry import NotStarShaped, StarPolygon, as_point

DEFAULT_BITS = 96


@dataclass(frozen=True)
class FloatPolygon:
    """Star-shaped polygon with mpmath coordinates, counterclockwise."""

    vertices: tuple


@dataclass(frozen=True)
class QuadrantStar:
    """Region in the closed quadrant, star-shaped about the origin corner.

    ``chain`` runs counterclockwise from a point on the positive x-axis to a
    point on the positive y-axis; the region is bounded by it and the axes.
    """

    chain: tuple


@dataclass(frozen=True)
class DistanceValue:
    C: object
    log_value: object
    exact: bool
    mode: str = "inclusion"


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _gauge_on(vertices, x, closed=True):
    n = len(vertices)
    last = n if closed else n - 1
    for i in range(last):
        a, b = vertices[i], vertices[(i + 1) % n]
        if _cross(a, x) >= 0 and _cross(x, b) >= 0:
            d = (b[0] - a[0], b[1] - a[1])
            return _cross(x, d) / _cross(a, b)
    raise ValueError(f"ray through {x} misses the boundary")


def _ratio(A_vs, B_vs, closed):
    """Smallest C with A and B each inside C times the other."""
    best = 1
    for p in A_vs:
        if p[0] == 0 and p[1] == 0:
            continue
        g = _gauge_on(B_vs, p, closed)
        best = max(best, g, 1 / g)
    for p in B_vs:
        if p[0] == 0 and p[1] == 0:
            continue
        g = _gauge_on(A_vs, p, closed)
        best = max(best, g, 1 / g)
    return best


def _value(C, mode):
    if isinstance(C, (int, Fraction)):
        C = Fraction(C)
        return DistanceValue(C, math.log(C.numerator) - math.log(C.denominator), True, mode)
    return DistanceValue(C, mpmath.log(C), False, mode)


def _vertices(P):
    if isinstance(P, (StarPolygon, FloatPolygon)):
        return P.vertices
    return tuple(as_point(p) for p in P)


def inclusion_distance(A, B, precision_bits: int = DEFAULT_BITS) -> DistanceValue:
    """``C`` and ``ln C`` for the inclusion distance of two star-shaped polygons."""
    a, b = _vertices(A), _vertices(B)
    if isinstance(A, FloatPolygon) or isinstance(B, FloatPolygon):
        with mpmath.workprec(precision_bits):
            a = tuple((mpmath.mpf(x), mpmath.mpf(y)) for x, y in _as_mp(a))
            b = tuple((mpmath.mpf(x), mpmath.mpf(y)) for x, y in _as_mp(b))
            return _value(_ratio(a, b, True), "inclusion")
    return _value(_ratio(a, b, True), "inclusion")


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _as_mp(vs):
    for x, y in vs:
        yield _mpf(x), _mpf(y)


def pv_polygon(v: Sequence, precision_bits: int = DEFAULT_BITS) -> FloatPolygon:
    """Symmetric 2N-gon with vertex j at ``exp(v_j)`` on the ray of angle ``pi (j-1)/N``.

    Consecutive vertices are ``pi/N`` apart in angle, so the polygon is
    star-shaped for every v; the visibility check guards against rounding.

    Raises:
        NotStarShaped: a vertex pair fails the numerical visibility check.
    """
    N = len(v)
    if N < 2:
        raise ValueError("need N >= 2")
    with mpmath.workprec(precision_bits):
        half = []
        for j, vj in enumerate(v):
            r = mpmath.exp(_mpf(vj))
            th = mpmath.pi * j / N
            half.append((r * mpmath.cos(th), r * mpmath.sin(th)))
        vs = tuple(half) + tuple((-x, -y) for x, y in half)
        for i in range(2 * N):
            if _cross(vs[i], vs[(i + 1) % (2 * N)]) <= 0:
                raise NotStarShaped(f"vertex {i} does not see vertex {i + 1}")
    return FloatPolygon(vs)


def qv_region(v: Sequence, precision_bits: int = DEFAULT_BITS) -> QuadrantStar:
    """Quadrant region with vertex j at ``exp(v_j)`` on the ray of angle ``(pi/2)(j-1)/(N-1)``."""
    N = len(v)
    if N < 2:
        raise ValueError("need N >= 2")
    with mpmath.workprec(precision_bits):
        chain = []
        for j, vj in enumerate(v):
            r = mpmath.exp(_mpf(vj))
            if j == 0:
                chain.append((r, mpmath.mpf(0)))
            elif j == N - 1:
                chain.append((mpmath.mpf(0), r))
            else:
                th = mpmath.pi / 2 * j / (N - 1)
                chain.append((r * mpmath.cos(th), r * mpmath.sin(th)))
    return QuadrantStar(tuple(chain))


def quadrant_star(vertices) -> QuadrantStar:
    """Validate a rational polygon with the origin as a vertex.

    Raises:
        NotInPositiveQuadrant: a vertex leaves the closed quadrant.
        NotStarShaped: the origin is not a vertex or the profile is not
            visible from it.
    """
    vs = [as_point(p) for p in vertices]
    if any(x < 0 or y < 0 for x, y in vs):
        raise NotInPositiveQuadrant("region leaves the closed positive quadrant")
    origin = (Fraction(0), Fraction(0))
    if origin not in vs:
        raise NotStarShaped("the origin must be a vertex")
    if sum(_cross(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))) < 0:
        vs.reverse()
    i = vs.index(origin)
    chain = vs[i + 1:] + vs[:i]
    if not chain or chain[0][1] != 0 or chain[-1][0] != 0:
        raise NotStarShaped("the region must touch both axes next to the origin")
    for p, q in zip(chain, chain[1:]):
        if _cross(p, q) <= 0:
            raise NotStarShaped(f"edge {p} -> {q} is not visible from the origin")
    return QuadrantStar(tuple(chain))


def hbm_distance(A, B, mode: str = "product", precision_bits: int = DEFAULT_BITS) -> DistanceValue:
    """Homological Banach-Mazur distance of product (or toric) domains.

    It equals the inclusion distance of the fibers.  In ``toric`` mode the
    fibers are quadrant regions with the origin as a corner (vertex lists or
    :class:`QuadrantStar`).
    """
    if mode == "product":
        d = inclusion_distance(A, B, precision_bits)
        return DistanceValue(d.C, d.log_value, d.exact, "hbm_product")
    if mode != "toric":
        raise ValueError(f"unknown mode {mode!r}")
    qa = A if isinstance(A, QuadrantStar) else quadrant_star(A)
    qb = B if isinstance(B, QuadrantStar) else quadrant_star(B)
    a, b = qa.chain, qb.chain
    if all(isinstance(c, Fraction) for p in a + b for c in p):
        d = _value(_ratio(a, b, False), "hbm_toric")
        return d
    with mpmath.workprec(precision_bits):
        a, b = tuple(_as_mp(a)), tuple(_as_mp(b))
        return _value(_ratio(a, b, False), "hbm_toric")
