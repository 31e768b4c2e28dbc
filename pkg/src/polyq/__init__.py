"""Exact rational polyhedral geometry.

Convex hulls in both directions, face numbers, volumes, lattice points and
Ehrhart polynomials, linear programming, cones and normal fans,
Gelfand-Tsetlin polytopes, and triangulations with their secondary
polytopes.  Every number is a :class:`fractions.Fraction`.
"""

from .constructions import (
    cross_polytope,
    cube,
    demazure_character,
    demazure_dimension,
    gelfand_tsetlin,
    generalized_gelfand_tsetlin,
    permutahedron,
    rand_spherical_polytope,
    simplex,
)
from .errors import CapExceeded, GeometryError
from .fan import Cone, Fan, fan_from_rays_and_cones, normal_fan, positive_hull
from .hull import HRep, VRep, hrep_to_vrep, vrep_to_hrep
from .lp import LinearProgram, LPResult, optimal_face, solve
from .polyhedron import Polyhedron, convex_hull, polyhedron_from_inequalities
from .triangulation import (
    PointConfiguration,
    Triangulation,
    all_triangulations,
    gkz_vector,
    is_regular,
    secondary_polytope,
)

__all__ = [
    "CapExceeded", "Cone", "Fan", "GeometryError", "HRep", "LPResult", "LinearProgram",
    "PointConfiguration", "Polyhedron", "Triangulation", "VRep", "all_triangulations",
    "convex_hull", "cross_polytope", "cube", "demazure_character", "demazure_dimension",
    "fan_from_rays_and_cones", "gelfand_tsetlin", "generalized_gelfand_tsetlin", "gkz_vector",
    "hrep_to_vrep", "is_regular", "normal_fan", "optimal_face", "permutahedron",
    "polyhedron_from_inequalities", "positive_hull", "rand_spherical_polytope",
    "secondary_polytope", "simplex", "solve", "vrep_to_hrep",
]
