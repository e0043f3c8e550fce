"""Exact computations for product domains ``T^2 x A`` in the cotangent bundle of the torus.

Fibers ``A`` are rational star-shaped polygons.  The package computes closed
Reeb orbits and systoles, ECH capacities and ball embeddings, normalized
capacities, and inclusion distances, all in exact rational arithmetic.
"""

from .capacities import (
    IRRATIONAL,
    CapacityVerdict,
    normalized_capacity,
    rectangle_capacity,
    tilted_cylinder_capacity,
    toric_transfer,
    viterbo_probe,
)
from .distances import DistanceValue, hbm_distance, inclusion_distance, pv_polygon, qv_region
from .ech import (
    EmbeddingCertificate,
    LatticePolygon,
    WeightSequence,
    ball_capacity,
    embed_ball_check,
    flat_capacity,
    gen_toric_capacity,
    gromov_width,
    lattice_count,
    union_capacity,
    weight_decomposition,
    wulff_lower_bound,
)
from .geometry import (
    ConvexPolygon,
    Direction,
    StarPolygon,
    area,
    convex_hull,
    gauge,
    make_convex_polygon,
    make_star_polygon,
    polar_dual,
    support,
)
from .reeb import classify, orbit_classes, spectrum, sys, sys_ratio, volume
from .surd import Sqrt

__version__ = "0.1.0"
