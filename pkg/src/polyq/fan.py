"""Polyhedral cones and fans."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import GeometryError
from .hull import HRep, VRep
from .linalg import dot, primitive, vec
from .polyhedron import Polyhedron


class Cone:
    """``pos(generators)``: all nonnegative combinations of the generators."""

    def __init__(self, generators: Iterable[Sequence], ambient_dim: int | None = None):
        gens = [vec(g) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise ValueError("ambient dimension needed for a cone without generators")
            ambient_dim = len(gens[0])
        if ambient_dim < 1:
            raise ValueError("cones live in a space of positive dimension")
        if any(len(g) != ambient_dim for g in gens):
            raise ValueError("generators of different lengths")
        self.ambient_dim = ambient_dim
        self.generators = tuple(gens)
        origin = tuple(Fraction(0) for _ in range(ambient_dim))
        self.polyhedron = Polyhedron(vrep=VRep(ambient_dim, points=[origin], rays=gens))

    def __repr__(self) -> str:
        return f"<{self.dim}-dimensional Cone in Q^{self.ambient_dim} with {len(self.rays)} rays>"

    @property
    def rays(self) -> tuple:
        """Extreme rays as primitive integer vectors (modulo the lineality)."""
        return tuple(sorted(primitive(r) for r in self.polyhedron.rays))

    @property
    def lineality(self) -> tuple:
        return self.polyhedron.lineality

    @property
    def facet_normals(self) -> tuple:
        """Normals ``a`` of the facet inequalities ``a.x <= 0``."""
        return tuple(a for a, _ in self.polyhedron.facets.inequalities)

    @property
    def equations(self) -> tuple:
        return tuple(e for e, _ in self.polyhedron.facets.equations)

    @property
    def dim(self) -> int:
        return self.polyhedron.dim

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, x: Sequence) -> bool:
        return self.polyhedron.contains(x)

    def intersection(self, other: "Cone") -> "Cone":
        h1, h2 = self.polyhedron.facets, other.polyhedron.facets
        both = Polyhedron(hrep=HRep(
            self.ambient_dim,
            inequalities=h1.inequalities + h2.inequalities,
            equations=h1.equations + h2.equations,
        ))
        return Cone(list(both.rays) + list(both.lineality)
                    + [tuple(-x for x in l) for l in both.lineality], self.ambient_dim)

    def is_face(self, F: "Cone") -> bool:
        """Whether ``F`` (assumed contained in this cone) is one of its faces.

        The smallest face containing ``F`` is cut out by the facets tight on
        all of its generators; ``F`` is a face iff that face lies in ``F``.
        """
        gens = list(F.rays) + list(F.lineality)
        tight = [a for a in self.facet_normals if all(dot(a, g) == 0 for g in gens)]
        for r in self.rays:
            if all(dot(a, r) == 0 for a in tight) and not F.contains(r):
                return False
        return all(F.contains(l) and F.contains(tuple(-x for x in l)) for l in self.lineality)

    def walls(self) -> list:
        """For each facet, the extreme rays lying on it."""
        return [frozenset(r for r in self.rays if dot(a, r) == 0) for a in self.facet_normals]


def positive_hull(generators: Iterable[Sequence], ambient_dim: int | None = None) -> Cone:
    return Cone(generators, ambient_dim)


def is_pointed(cone: Cone) -> bool:
    return cone.is_pointed


class Fan:
    """Maximal cones given as sets of indices into a list of primitive rays."""

    def __init__(self, ambient_dim: int, rays: Sequence[Sequence], maximal_cones: Sequence[Iterable[int]]):
        self.ambient_dim = ambient_dim
        self.rays = tuple(primitive(vec(r)) for r in rays)
        if any(len(r) != ambient_dim for r in self.rays):
            raise ValueError("ray of the wrong length")
        if any(not any(r) for r in self.rays):
            raise ValueError("zero vector is not a ray")
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("duplicate rays")
        cones = []
        for c in maximal_cones:
            idx = tuple(sorted(set(int(i) for i in c)))
            if any(i < 0 or i >= len(self.rays) for i in idx):
                raise ValueError(f"cone {list(c)} refers to a missing ray")
            cones.append(idx)
        self.maximal_cones = tuple(cones)

    def __repr__(self) -> str:
        return (f"<Fan in Q^{self.ambient_dim} with {len(self.rays)} rays "
                f"and {len(self.maximal_cones)} maximal cones>")

    def cone(self, i: int) -> Cone:
        return Cone([self.rays[j] for j in self.maximal_cones[i]], self.ambient_dim)

    def cones(self) -> list:
        return [self.cone(i) for i in range(len(self.maximal_cones))]

    def _canonical(self):
        return frozenset(frozenset(self.rays[j] for j in c) for c in self.maximal_cones)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fan):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and set(self.rays) == set(other.rays)
                and self._canonical() == other._canonical())

    def __hash__(self) -> int:
        return hash((self.ambient_dim, frozenset(self.rays), self._canonical()))

    @property
    def incidence(self) -> list:
        """Cone-by-ray boolean matrix."""
        return [[j in c for j in range(len(self.rays))] for c in self.maximal_cones]

    def is_valid(self) -> bool:
        """Each listed ray is extreme in its cones and every pairwise
        intersection is a face of both cones."""
        cones = self.cones()
        for idx, C in zip(self.maximal_cones, cones):
            if not C.is_pointed or set(C.rays) != {self.rays[j] for j in idx}:
                return False
        for C1, C2 in combinations(cones, 2):
            inter = C1.intersection(C2)
            if not (C1.is_face(inter) and C2.is_face(inter)):
                return False
        return True

    def is_pure(self) -> bool:
        dims = {C.dim for C in self.cones()}
        return len(dims) <= 1

    def is_complete(self) -> bool:
        """Every wall of every maximal cone is shared by exactly two cones.

        Only defined for valid fans whose maximal cones are all full-dimensional.
        """
        cones = self.cones()
        if not cones:
            return False
        if any(C.dim != self.ambient_dim for C in cones):
            raise GeometryError("completeness is only decided for pure full-dimensional fans")
        if not self.is_valid():
            raise GeometryError("not a fan: some cones meet outside a common face")
        walls = Counter(w for C in cones for w in C.walls())
        return all(n == 2 for n in walls.values())

    def truncated_cells(self) -> list:
        """Each maximal cone cut down to ``conv(0, r / max|r_i|)`` per ray,
        padded to three coordinates; only for ambient dimension at most 3."""
        if self.ambient_dim > 3:
            raise GeometryError("truncated cones can only be drawn in dimension <= 3")
        cells = []
        for c in self.maximal_cones:
            pts = [tuple(Fraction(0) for _ in range(3))]
            for j in c:
                r = self.rays[j]
                m = max(abs(x) for x in r)
                pts.append(tuple(Fraction(x, m) for x in r) + (Fraction(0),) * (3 - self.ambient_dim))
            cells.append(pts)
        return cells


def fan_from_rays_and_cones(rays: Sequence[Sequence], cones: Sequence) -> Fan:
    """Build a fan from rays and an incidence, given either as lists of
    ray indices or as rows of a boolean cone-by-ray matrix."""
    rays = [tuple(r) for r in rays]
    if not rays:
        raise ValueError("a fan needs at least one ray")
    d = len(rays[0])
    index_sets = []
    for row in cones:
        row = list(row)
        if row and all(isinstance(x, bool) for x in row):
            if len(row) != len(rays):
                raise ValueError("incidence row length differs from the number of rays")
            index_sets.append([j for j, x in enumerate(row) if x])
        else:
            index_sets.append(row)
    return Fan(d, rays, index_sets)


def normal_fan(P: Polyhedron) -> Fan:
    """Outer normal fan: one cone per vertex, spanned by the normals of the
    facets through it."""
    if P.is_empty or not P.is_bounded:
        raise GeometryError("normal fans are only built for nonempty polytopes")
    if P.dim != P.ambient_dim:
        raise GeometryError("normal fan of a lower-dimensional polytope has lineality")
    normals = [a for a, _ in P.facets.inequalities]
    inc = P.incidence
    cones = [sorted(inc.column(j)) for j in range(P.n_vertices)]
    return Fan(P.ambient_dim, normals, cones)


def normal_cone_of(fan: Fan, c: Sequence) -> list:
    """Indices of the maximal cones containing ``c``."""
    return [i for i, C in enumerate(fan.cones()) if C.contains(c)]
