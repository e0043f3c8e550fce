"""
Normalized capacities of flat codisc bundles
============================================

For a convex centrally symmetric fiber A every normalized capacity of
T^2 x A equals twice the systole, provided A is symmetric in both axes or
its systolic ratio is at most 1/8.  Otherwise only a bracket is known.
"""

from fiberwise import make_convex_polygon
from fiberwise.capacities import (
    IRRATIONAL,
    normalized_capacity,
    tilted_cylinder_capacity,
    toric_transfer,
    viterbo_probe,
)

fibers = {
    "cross": [(1, 0), (0, 1), (-1, 0), (0, -1)],
    "square": [(1, 1), (-1, 1), (-1, -1), (1, -1)],
    "rectangle": [(1, 2), (-1, 2), (-1, -2), (1, -2)],
    "hexagon": [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
}
for name, vs in fibers.items():
    v = normalized_capacity(make_convex_polygon(vs))
    shown = v.value if v.is_exact else f"[{v.lo}, {v.hi}]"
    print(f"{name:<10} rho = {v.rho}: {shown} ({v.rule})")

# Tilted cylinders: rational slopes give finite capacity, irrational ones do not.
for direction in ((0, 1), (1, 1), (1, 2), IRRATIONAL):
    print("cylinder", direction, "->", tilted_cylinder_capacity(1, direction))

# Monotone toric regions transfer their capacity to T^2 x Omega.
print(toric_transfer([(0, 0), (3, 0), (0, 3)]))

print(viterbo_probe(make_convex_polygon(fibers["hexagon"])).message)
