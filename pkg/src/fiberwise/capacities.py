"""Normalized capacities of product domains ``T^2 x A`` with polygonal fiber.

Values are exact: Fractions, :class:`~fiberwise.surd.Sqrt` for surds, and
``math.inf`` for the unbounded case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .ech import NotInPositiveQuadrant, gromov_width, weight_decomposition
from .geometry import (
    Direction,
    GeometryError,
    NotConvex,
    StarPolygon,
    as_convex,
    as_fraction,
    as_point,
    cross,
    is_axis_symmetric,
    is_centrally_symmetric,
    is_convex,
    make_convex_polygon,
    signed_area,
    sub,
)
from .reeb import sys as systole
from .reeb import sys_ratio
from .surd import Sqrt

IRRATIONAL = "irrational"


class NotCentrallySymmetric(GeometryError):
    pass


class NotPrime(ValueError):
    pass


class NotMonotone(GeometryError):
    pass


@dataclass(frozen=True)
class CapacityVerdict:
    """What the theory pins down for ``c(T^2 x A)``.

    Equality rules set ``lo == hi == value``.  The ``interval_only`` rule
    leaves ``value`` as None and brackets the capacity by the Gromov width
    of the toric model (``lo``) and ``2 sys`` (``hi``).
    """

    value: object
    rule: str
    sys: Fraction
    rho: Fraction
    lo: object
    hi: object

    @property
    def is_exact(self) -> bool:
        return self.value is not None


def _translate_to_quadrant(A: StarPolygon):
    mx = min(x for x, _ in A.vertices)
    my = min(y for _, y in A.vertices)
    return [(x - mx, y - my) for x, y in A.vertices]


def normalized_capacity(A: StarPolygon) -> CapacityVerdict:
    """Common value of normalized capacities of ``T^2 x A`` when it is determined.

    Equality ``c = 2 sys(A)`` holds when ``sys(A)**2 / vol <= 1/8`` (checked
    first) or when A is symmetric in both coordinate axes.  Otherwise an
    interval is returned.

    Raises:
        NotConvex: A is not convex.
        NotCentrallySymmetric: A is not symmetric about the origin.
    """
    if not is_convex(A):
        raise NotConvex("fiber must be convex")
    A = as_convex(A)
    if not is_centrally_symmetric(A):
        raise NotCentrallySymmetric("fiber must be centrally symmetric")
    s = systole(A)
    rho = sys_ratio(A)
    two_s = 2 * s
    if rho <= Fraction(1, 8):
        return CapacityVerdict(two_s, "thm_E_ii", s, rho, two_s, two_s)
    if is_axis_symmetric(A):
        return CapacityVerdict(two_s, "thm_E_i", s, rho, two_s, two_s)
    lo = gromov_width(weight_decomposition(_translate_to_quadrant(A)))
    return CapacityVerdict(None, "interval_only", s, rho, lo, two_s)


def rectangle_capacity(a, b) -> Fraction:
    """Capacity of ``T^2 x [-a, a] x [-b, b]`` for ``0 < a <= b``."""
    a, b = as_fraction(a), as_fraction(b)
    if not 0 < a <= b:
        raise ValueError("need 0 < a <= b")
    return 2 * a


def tilted_cylinder_capacity(r, direction):
    """Capacity of the tilted cylinder of width ``2r`` along ``direction``.

    ``direction`` is a prime integer vector (a tuple or
    :class:`~fiberwise.geometry.Direction`) or the flag ``IRRATIONAL``.
    Returns ``2 r |direction|`` (a Fraction when rational, else a
    :class:`~fiberwise.surd.Sqrt`) or ``math.inf``.

    Raises:
        NotPrime: the integer direction is zero or not primitive.
    """
    r = as_fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    if direction == IRRATIONAL:
        return math.inf
    m, n = tuple(direction)
    if not (isinstance(m, int) and isinstance(n, int)):
        raise TypeError("direction must be an integer vector or IRRATIONAL")
    if (m, n) == (0, 0) or math.gcd(m, n) != 1:
        raise NotPrime(f"({m}, {n}) is not a prime integer vector")
    return Sqrt(4 * r * r * (m * m + n * n)).exact()


def cylinder_polygon(m: int, n: int, t) -> StarPolygon:
    """Parallelogram inscribed in the tilted cylinder, rescaled to be rational.

    Two sides lie on ``m x + n y = +-1`` (the cylinder of half-width
    ``1/|(m, n)|`` measured in the direction of ``(m, n)``); the others are
    vertical at ``x = +-t``.  Its systole is 1 for t large, so the original
    polygon, of scale ``|(m, n)|``, has systole ``|(m, n)|``.
    """
    t = as_fraction(t)
    Direction(m, n)
    if n == 0:
        # the roles of the coordinates swap
        P = cylinder_polygon(n, m, t)
        return make_convex_polygon([(y, x) for x, y in P.vertices])
    p = (t, Fraction(1 - m * t, n))
    q = (-t, Fraction(1 + m * t, n))
    return make_convex_polygon([p, q, (-p[0], -p[1]), (-q[0], -q[1])])


@dataclass(frozen=True)
class TransferReport:
    """Capacities of ``X_Omega`` and ``T^2 x Omega`` agree for monotone Omega.

    ``lo`` is the largest standard triangle inside Omega (a ball inside
    ``X_Omega``), ``hi`` the smaller of its axis extents (a cylinder
    containing it).  When they agree every ball-normalized capacity equals
    ``value``.
    """

    monotone: bool
    lo: Fraction
    hi: Fraction
    value: Fraction | None
    gromov_width: object = None


def _profile_edges(vs):
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if (a[0] == 0 and b[0] == 0) or (a[1] == 0 and b[1] == 0):
            continue
        yield a, b


def toric_transfer(omega) -> TransferReport:
    """Common value of ball-normalized capacities of ``X_Omega`` and ``T^2 x Omega``.

    Raises:
        NotInPositiveQuadrant: Omega leaves the closed quadrant.
        NotMonotone: an outward normal of the profile has a negative entry.
    """
    vs = [as_point(p) for p in (omega.vertices if isinstance(omega, StarPolygon) else omega)]
    if any(x < 0 or y < 0 for x, y in vs):
        raise NotInPositiveQuadrant("region leaves the closed positive quadrant")
    if signed_area(vs) < 0:
        vs.reverse()
    for a, b in _profile_edges(vs):
        d = sub(b, a)
        nx, ny = d[1], -d[0]
        if nx < 0 or ny < 0:
            raise NotMonotone(f"edge {a} -> {b} has outward normal ({nx}, {ny})")
    profile = {p for e in _profile_edges(vs) for p in e}
    lo = min(x + y for x, y in profile)
    hi = min(max(x for x, _ in vs), max(y for _, y in vs))
    value = lo if lo == hi else None
    width = None
    if _convex(vs):
        width = gromov_width(weight_decomposition(vs))
    return TransferReport(True, lo, hi, value, width)


def _convex(vs):
    n = len(vs)
    return all(cross(sub(vs[i], vs[i - 1]), sub(vs[(i + 1) % n], vs[i])) >= 0 for i in range(n))


@dataclass(frozen=True)
class ViterboReport:
    gromov_width: object
    two_sys: Fraction
    gap: bool
    message: str


def viterbo_probe(A: StarPolygon) -> ViterboReport:
    """Compare the toric-model Gromov width of A with ``2 sys(A)``.

    A gap ``w < 2 sys`` would make ``A x A*`` a counterexample to the strong
    Viterbo conjecture.
    """
    A = as_convex(A)
    w = gromov_width(weight_decomposition(_translate_to_quadrant(A)))
    two_s = 2 * systole(A)
    if w < two_s:
        msg = f"strong-Viterbo counterexample implied for A x A* (c_Gr = {w} < {two_s})"
        return ViterboReport(w, two_s, True, msg)
    return ViterboReport(w, two_s, False, f"no gap detected (w = {w}, 2 sys = {two_s})")
