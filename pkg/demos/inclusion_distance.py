"""
Inclusion distance and a flat family of fibers
==============================================

The inclusion distance between star-shaped fibers is the log of the
smallest factor C with each fiber inside C times the other.  The polygons
P_v, with vertex j at distance exp(v_j) along equally spaced rays, realise
the sup-norm distance between the vectors v.
"""

import random

from fiberwise import make_star_polygon
from fiberwise.distances import hbm_distance, inclusion_distance, pv_polygon

cross = make_star_polygon([(1, 0), (0, 1), (-1, 0), (0, -1)])
square = make_star_polygon([(1, 1), (-1, 1), (-1, -1), (1, -1)])
d = inclusion_distance(cross, square)
print("cross vs square: C =", d.C, "distance", d.log_value)

rng = random.Random(0)
for N in (2, 4, 6):
    v = [rng.uniform(-2, 2) for _ in range(N)]
    w = [rng.uniform(-2, 2) for _ in range(N)]
    got = float(inclusion_distance(pv_polygon(v), pv_polygon(w)).log_value)
    want = max(abs(a - b) for a, b in zip(v, w))
    print(f"N={N}: distance {got:.12f}, sup-norm {want:.12f}")

# Toric regions with the origin as a corner.
small = [(0, 0), (1, 0), (0, 1)]
big = [(0, 0), (3, 0), (0, 3)]
print("toric:", hbm_distance(small, big, "toric").C)
