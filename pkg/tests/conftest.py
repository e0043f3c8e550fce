import math
import random
from fractions import Fraction

from hypothesis import strategies as st

from fiberwise.geometry import convex_hull, cross, make_convex_polygon, make_star_polygon

F = Fraction

B1 = make_convex_polygon([(1, 0), (0, 1), (-1, 0), (0, -1)])
SQUARE = make_convex_polygon([(1, 1), (-1, 1), (-1, -1), (1, -1)])
TRI = make_convex_polygon([(-1, -1), (1, 0), (0, 1)])
TRI_DOWN = make_convex_polygon([(0, 1), (-1, -1), (1, -1)])
HEXAGON = make_convex_polygon([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])


def notched(delta):
    d = F(delta)
    return make_star_polygon(
        [(1, 0), (0, 1), (-1 + d, -1 + 2 * d), (-1 + 2 * d, -1 + 2 * d), (-1 + 2 * d, -1 + d)]
    )


def _angle_key(v):
    return math.atan2(v[1], v[0]) % (2 * math.pi)


def random_star(rng: random.Random, n_min=3, n_max=9, box=6):
    """Random rational star polygon.

    Integer vectors on distinct rays, sorted by angle with every gap below
    pi, each scaled by a random rational in [1/4, 2].
    """
    while True:
        by_ray = {}
        for _ in range(rng.randint(n_min, n_max)):
            v = (rng.randint(-box, box), rng.randint(-box, box))
            if v == (0, 0):
                continue
            g = math.gcd(*v)
            by_ray.setdefault((v[0] // g, v[1] // g), v)
        vs = sorted(by_ray.values(), key=_angle_key)
        if len(vs) < 3 or any(cross(vs[i], vs[(i + 1) % len(vs)]) <= 0 for i in range(len(vs))):
            continue
        pts = []
        for x, y in vs:
            c = F(rng.randint(1, 8), 4)
            pts.append((c * x, c * y))
        return make_star_polygon(pts)


def random_symmetric_lattice(rng: random.Random, box=6):
    while True:
        pts = [(rng.randint(-box, box), rng.randint(-box, box)) for _ in range(rng.randint(1, 4))]
        try:
            return convex_hull(pts + [(-x, -y) for x, y in pts])
        except ValueError:
            continue


@st.composite
def star_polygons(draw):
    seed = draw(st.integers(0, 10**9))
    return random_star(random.Random(seed))


@st.composite
def symmetric_lattice_polygons(draw, box=6):
    seed = draw(st.integers(0, 10**9))
    return random_symmetric_lattice(random.Random(seed), box)


@st.composite
def positive_rationals(draw, max_num=20, max_den=6):
    return F(draw(st.integers(1, max_num)), draw(st.integers(1, max_den)))


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion at the end of the run

_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    num = int(name.split("_")[2])
    if report.failed:
        _criteria[num] = "FAIL"
    elif report.when == "call":
        _criteria.setdefault(num, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        terminalreporter.write_line(f"criterion {num:2d}: {_criteria[num]}")
