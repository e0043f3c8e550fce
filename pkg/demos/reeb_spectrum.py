"""
Action spectrum of a hexagonal fiber
====================================

Every edge of the fiber carries one circle family of Reeb orbits, and every
vertex carries one family for each primitive direction strictly between its
two edge normals.  Listing them by action gives the spectrum.
"""

from fiberwise import make_star_polygon
from fiberwise.reeb import orbit_classes, ruelle_invariant, zeta

hexagon = make_star_polygon([(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)])

# Simple orbits with action at most 4.
for c in orbit_classes(hexagon, 4):
    print(f"{str(c.action):>4}  {c.kind:<20} direction {c.direction.vec}  feature {c.feature_index}")

# Multiple covers repeat every family at integer multiples of its action.
covers = orbit_classes(hexagon, 4, covers=True)
print(len(covers), "classes with covers up to action 4")

# Product domains have vanishing Ruelle invariant and trivial zeta function.
print("Ruelle invariant:", ruelle_invariant(hexagon))
print("zeta:", zeta(hexagon).render())
