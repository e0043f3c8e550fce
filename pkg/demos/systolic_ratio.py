"""
Systolic ratio of product domains
=================================

A star-shaped polygon A gives the domain T^2 x A.  Its closed Reeb orbits
come in families indexed by primitive integer directions, and the shortest
one sets the systole.  The ratio sys^2 / volume separates the systolically
convex domains (ratio at most 1/4) from the rest.
"""

from fractions import Fraction

from fiberwise import make_star_polygon
from fiberwise.reeb import classify, sys_ratio, systole_witness, volume

# The unit cross-polytope attains the bound 1/4 exactly.
cross = make_star_polygon([(1, 0), (0, 1), (-1, 0), (0, -1)])
print("cross-polytope rho =", sys_ratio(cross))

# A lopsided triangle does better than any convex symmetric fiber.
tri = make_star_polygon([(-1, -1), (1, 0), (0, 1)])
s, direction, vertex = systole_witness(tri)
print("triangle sys =", s, "direction", direction.vec, "at", vertex)
print("triangle volume =", volume(tri), "rho =", sys_ratio(tri))

# Notching the bottom corner costs a little systole and a little area.
for delta in (Fraction(1, 10), Fraction(1, 20), Fraction(1, 50)):
    d = delta
    notched = make_star_polygon(
        [(1, 0), (0, 1), (-1 + d, -1 + 2 * d), (-1 + 2 * d, -1 + 2 * d), (-1 + 2 * d, -1 + d)]
    )
    rho = sys_ratio(notched)
    print(f"delta = {delta}: rho = {rho} ({float(rho):.4f}), above 1/4: {rho > Fraction(1, 4)}")

flags = classify(tri)
print("triangle systolically convex:", flags.systolically_convex)
