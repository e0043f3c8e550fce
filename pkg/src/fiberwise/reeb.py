"""Reeb dynamics on the boundary of a product domain ``T^2 x A``.

On ``T^2 x {p}`` the Reeb flow is linear with velocity ``n(p) / (p . n(p))``.
It closes up exactly when the normal ``n(p)`` is a rational direction, and a
closed orbit with primitive integer direction ``w`` has action ``w . p``.

Polygonal fibers are read through their smoothing limit: an edge contributes
its own normal, a vertex ``p`` contributes every primitive direction in the
short arc between the normals of its two edges, all at action ``w . p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .geometry import (
    Direction,
    GeometryError,
    StarPolygon,
    area,
    as_point,
    convex_hull,
    cross,
    dot,
    edge_normal,
    is_centrally_symmetric,
    is_convex,
    is_generalized_monotone,
    normal_features,
    sub,
)


class PointNotOnBoundary(GeometryError):
    pass


@dataclass(frozen=True)
class ReebDirection:
    vector: tuple[Fraction, Fraction]
    closed: bool
    direction: Optional[Direction]
    action: Optional[Fraction]


@dataclass(frozen=True)
class OrbitClass:
    feature_index: int
    kind: str
    direction: Direction
    base_point: tuple[Fraction, Fraction]
    base_action: Fraction
    cover: int = 1

    @property
    def action(self) -> Fraction:
        return self.cover * self.base_action


@dataclass(frozen=True)
class Spectrum:
    cutoff: Fraction
    actions: tuple  # ((action, (OrbitClass, ...)), ...)

    def values(self) -> list[Fraction]:
        return [a for a, _ in self.actions]


@dataclass(frozen=True)
class ClassificationFlags:
    is_product: bool
    fiber_convex: bool
    fiber_centrally_symmetric: bool
    generalized_monotone: bool
    dynamically_convex: bool
    systolically_convex: bool
    sys_ratio: Fraction


ELLIPTIC = "elliptic"
POSITIVE_HYPERBOLIC = "positive_hyperbolic"
NEGATIVE_HYPERBOLIC = "negative_hyperbolic"
_KINDS = (ELLIPTIC, POSITIVE_HYPERBOLIC, NEGATIVE_HYPERBOLIC)


@dataclass(frozen=True)
class ZetaExpression:
    """Formal product over simple orbits.

    ``factors`` holds ``(action, kind)`` pairs.  An action is a Fraction, or
    a ``(label, value)`` pair when it should print symbolically (``value``
    orders the terms).
    """

    factors: tuple = ()
    is_trivially_one: bool = False

    def __post_init__(self):
        if self.is_trivially_one and self.factors:
            raise ValueError("a trivially-one zeta function has no factors")

    def lowest_term(self):
        """``(action, coefficient)`` of the lowest nonconstant term, or None."""
        if not self.factors:
            return None
        vals = [(_action_value(a), a, k) for a, k in self.factors]
        total = sum(v for v, _, _ in vals)
        bound = 2 * total
        series = {Fraction(0): 1}
        for v, _, kind in vals:
            if kind == ELLIPTIC:
                # (1 - t^v)^(-1) = sum_j t^(j v)
                terms = {j * v: 1 for j in range(int(bound / v) + 1)}
            elif kind == POSITIVE_HYPERBOLIC:
                terms = {Fraction(0): 1, v: -1}
            else:
                terms = {Fraction(0): 1, v: 1}
            new: dict = {}
            for e1, c1 in series.items():
                for e2, c2 in terms.items():
                    e = e1 + e2
                    if e <= bound:
                        new[e] = new.get(e, 0) + c1 * c2
            series = {e: c for e, c in new.items() if c != 0}
        nonconst = sorted(e for e in series if e != 0)
        if not nonconst:
            return None
        e = nonconst[0]
        labels = {v: a for v, a, _ in vals}
        return labels.get(e, e), series[e]

    def render(self) -> str:
        if not self.factors:
            return "1"
        out = []
        for a, kind in self.factors:
            lab = a[0] if isinstance(a, tuple) else str(a)
            if kind == ELLIPTIC:
                out.append(f"(1 - t^{{{lab}}})^(-1)")
            elif kind == POSITIVE_HYPERBOLIC:
                out.append(f"(1 - t^{{{lab}}})")
            else:
                out.append(f"(1 + t^{{{lab}}})")
        return " ".join(out)


def _action_value(a) -> Fraction:
    return Fraction(a[1]) if isinstance(a, tuple) else Fraction(a)


# ---------------------------------------------------------------------------
# lattice directions inside a cone


_QUADRANTS = (((1, 0), (0, 1)), ((0, 1), (-1, 0)), ((-1, 0), (0, -1)), ((0, -1), (1, 0)))


def _orient(a, b):
    # short arc between a and b, returned counterclockwise
    return (b, a) if cross(a, b) < 0 else (a, b)


def _in_cone(w, a, b):
    return cross(a, w) >= 0 and cross(w, b) >= 0


def _strictly_inside(w, x, y):
    return cross(x, w) > 0 and cross(w, y) > 0


def _cone_nodes(a, b):
    """Stern-Brocot nodes (x, y), det = 1, relevant to the closed cone [a, b].

    Yields ``(x, y, inside)`` where ``inside`` means the whole node cone lies
    in [a, b].  Partial nodes are yielded too, so the caller can look at
    their endpoints.  Only nodes whose interior contains a or b get split.
    """
    stack = list(_QUADRANTS)
    while stack:
        x, y = stack.pop()
        xin, yin = _in_cone(x, a, b), _in_cone(y, a, b)
        split = _strictly_inside(a, x, y) or _strictly_inside(b, x, y)
        if not split:
            yield x, y, xin and yin
            continue
        yield x, y, False
        m = (x[0] + y[0], x[1] + y[1])
        stack.append((x, m))
        stack.append((m, y))


def cone_minimum(a, b, p):
    """Minimum of ``w . p`` over nonzero lattice points w in the cone [a, b].

    ``p . w`` must be positive on the cone.  Returns ``(value, w)``.
    """
    a, b = _orient(a, b)
    if cross(a, b) == 0:
        return dot(a, p), tuple(a)
    best = None
    for x, y, inside in _cone_nodes(a, b):
        for w in (x, y):
            if _in_cone(w, a, b):
                v = dot(w, p)
                if best is None or (v, w) < best:
                    best = (v, w)
    return best


def cone_directions(a, b, p, limit, open_arc=False):
    """Primitive ``w`` in the cone [a, b] with ``w . p <= limit``, sorted."""
    a, b = _orient(a, b)
    found = set()

    def keep(w):
        if not _in_cone(w, a, b):
            return
        if open_arc and (
            (cross(a, w) == 0 and dot(a, w) > 0) or (cross(b, w) == 0 and dot(b, w) > 0)
        ):
            return
        if dot(w, p) <= limit:
            found.add(w)

    if cross(a, b) == 0:
        if not open_arc and dot(a, p) <= limit:
            found.add(tuple(a))
        return sorted(found)
    for x, y, inside in _cone_nodes(a, b):
        keep(x)
        keep(y)
        if not inside:
            continue
        # every primitive vector strictly inside a unimodular node is a
        # mediant descendant, and its value exceeds x.p + y.p
        sub_stack = [(x, y)]
        while sub_stack:
            u, v = sub_stack.pop()
            if dot(u, p) + dot(v, p) > limit:
                continue
            m = (u[0] + v[0], u[1] + v[1])
            keep(m)
            sub_stack.append((u, m))
            sub_stack.append((m, v))
    return sorted(found)


# ---------------------------------------------------------------------------


def reeb_direction(P: StarPolygon, p) -> ReebDirection:
    """Reeb velocity on ``T^2 x {p}`` for ``p`` in the interior of an edge."""
    p = as_point(p)
    vs = P.vertices
    if p in vs:
        raise PointNotOnBoundary(f"{p} is a vertex; use the vertex normal arc")
    for a, b in P.edges():
        d = sub(b, a)
        if cross(d, sub(p, a)) == 0 and 0 < dot(sub(p, a), d) < dot(d, d):
            w = edge_normal(a, b)
            scale = dot(w.vec, p)
            vec = (Fraction(w.m) / scale, Fraction(w.n) / scale)
            return ReebDirection(vec, True, w, scale)
    raise PointNotOnBoundary(f"{p} is not on the boundary")


def orbit_classes(P: StarPolygon, cutoff, covers: bool = False) -> list[OrbitClass]:
    """Simple closed-orbit families with action at most ``cutoff``.

    One class per edge, plus one per primitive direction strictly inside
    each vertex arc.  With ``covers=True`` iterates are listed as well.
    Sorted by (action, direction, feature).
    """
    L = Fraction(cutoff)
    if L <= 0:
        raise ValueError("cutoff must be positive")
    out = []
    for f in normal_features(P):
        if f.kind == "edge":
            act = dot(f.direction.vec, f.start)
            if act <= L:
                out.append(OrbitClass(2 * f.index + 1, "edge", f.direction, f.start, act))
        else:
            for w in cone_directions(f.arc_start.vec, f.arc_end.vec, f.point, L, open_arc=True):
                out.append(
                    OrbitClass(2 * f.index, "vertex", Direction(*w), f.point, dot(w, f.point))
                )
    if covers:
        more = []
        for c in out:
            k = 2
            while k * c.base_action <= L:
                more.append(
                    OrbitClass(c.feature_index, c.kind, c.direction, c.base_point, c.base_action, k)
                )
                k += 1
        out += more
    out.sort(key=lambda c: (c.action, c.direction.vec, c.feature_index, c.cover))
    return out


def spectrum(P: StarPolygon, cutoff) -> Spectrum:
    buckets: dict = {}
    for c in orbit_classes(P, cutoff, covers=True):
        buckets.setdefault(c.action, []).append(c)
    return Spectrum(Fraction(cutoff), tuple((a, tuple(buckets[a])) for a in sorted(buckets)))


def systole_witness(P: StarPolygon):
    """``(sys, direction, vertex)`` realizing the minimal action."""
    best = None
    for f in normal_features(P):
        if f.kind != "vertex":
            continue
        v, w = cone_minimum(f.arc_start.vec, f.arc_end.vec, f.point)
        if best is None or v < best[0]:
            best = (v, Direction(*w), f.point)
    return best


def sys(P: StarPolygon) -> Fraction:
    """Minimal action of a closed Reeb orbit (smoothing limit)."""
    return systole_witness(P)[0]


def volume(P: StarPolygon) -> Fraction:
    """Contact volume of ``T^2 x boundary(A)``, i.e. twice the fiber area."""
    return 2 * area(P)


def sys_ratio(P: StarPolygon) -> Fraction:
    return sys(P) ** 2 / volume(P)


def classify(P: StarPolygon) -> ClassificationFlags:
    rho = sys_ratio(P)
    # every closed orbit of a product domain is non-contractible
    dyn = True
    return ClassificationFlags(
        is_product=True,
        fiber_convex=is_convex(P),
        fiber_centrally_symmetric=is_centrally_symmetric(P),
        generalized_monotone=is_generalized_monotone(P),
        dynamically_convex=dyn,
        systolically_convex=dyn and rho <= Fraction(1, 4),
        sys_ratio=rho,
    )


def ruelle_invariant(P: StarPolygon) -> Fraction:
    """Identically zero on product domains: the linearized flow is a shear."""
    return Fraction(0)


def zeta(P: StarPolygon) -> ZetaExpression:
    """The dynamical zeta function of a product domain is 1."""
    return ZetaExpression((), True)


def zeta_from_orbits(orbits) -> ZetaExpression:
    """Formal zeta product from ``(action, kind)`` pairs of simple orbits."""
    factors = []
    for a, kind in orbits:
        if kind not in _KINDS:
            raise ValueError(f"unknown orbit kind {kind!r}")
        if _action_value(a) <= 0:
            raise ValueError("actions must be positive")
        factors.append((a, kind))
    return ZetaExpression(tuple(factors), not factors)


@dataclass(frozen=True)
class ShearReport:
    epsilon: Fraction
    base: StarPolygon
    fiber_family: str
    preserved: dict = field(default_factory=dict)
    is_product: bool = True
    fiber_convex: bool = True


def shear_matrix(epsilon, q2: float):
    """Linear map taking the base fiber to the fiber over ``q2``."""
    return ((1.0, 0.0), (-float(epsilon) * math.cos(2 * math.pi * q2), 1.0))


def shear_report(P: StarPolygon, epsilon) -> ShearReport:
    """Invariants of the image of ``T^2 x A`` under the cotangent lift of
    ``(q1, q2) -> (q1 + eps/(2 pi) sin(2 pi q2), q2)``.

    The lift is an exact symplectomorphism isotopic to the identity, so the
    action spectrum and volume are unchanged; only the product structure is
    lost once ``eps != 0``.
    """
    eps = Fraction(epsilon)
    s, vol = sys(P), volume(P)
    return ShearReport(
        epsilon=eps,
        base=P,
        fiber_family=(
            "fiber over q2 is M(q2)*A with "
            f"M(q2) = [[1, 0], [-({eps})*cos(2*pi*q2), 1]]"
        ),
        preserved={
            "sys": s,
            "volume": vol,
            "sys_ratio": s**2 / vol,
            "dynamically_convex": True,
        },
        is_product=eps == 0,
        fiber_convex=is_convex(P),
    )


def hull_sys_bound(P: StarPolygon):
    """``(sys(hull), area(hull) / (3 area(P)))``: upper bounds for
    ``sys(P)`` and ``sys_ratio(P)``."""
    H = convex_hull(P)
    return sys(H), area(H) / (3 * area(P))
