"""
ECH capacities from lattice polygons and ball weights
=====================================================

Two routes lead to ECH capacities here.  For a flat fiber A the k-th
capacity is the least A-perimeter of a convex lattice polygon with k + 1
lattice points.  For a convex region in the quadrant we first cut it into
a head triangle minus balls, then combine ball capacities.
"""

from fiberwise import make_convex_polygon
from fiberwise.ech import (
    flat_capacity_witness,
    gen_toric_sequence,
    lattice_count,
    weight_decomposition,
    wulff_lower_bound,
)

cross = make_convex_polygon([(1, 0), (0, 1), (-1, 0), (0, -1)])

# Minimizing lattice polygons for the first few k.
for k in range(1, 7):
    value, L = flat_capacity_witness(cross, k)
    bound = wulff_lower_bound(cross, k)
    print(f"k={k}: c_k = {value}, minimizer {L.vertices} ({lattice_count(L)} points), "
          f"Wulff bound {float(bound):.3f}")

# The triangle with vertices (0,0), (2,1), (1,2) is the size-3 triangle
# with six unit corners removed.
W = weight_decomposition([(0, 0), (2, 1), (1, 2)])
print("weights:", W, "volume defect", W.volume_defect)
values = gen_toric_sequence(W, 10).values
print("capacities:", ", ".join(f"c_{k} = {v}" for k, v in values.items() if k))
