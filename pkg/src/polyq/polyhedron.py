"""The central polyhedron object and its combinatorial/metric invariants."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

from .errors import GeometryError
from .hull import (
    HRep,
    VRep,
    canonical_vrep,
    hrep_to_vrep,
    irredundant_vrep,
    placing_triangulation,
    tight_masks,
    vrep_to_hrep,
)
from .linalg import (
    UnivariatePolynomial,
    integer_kernel,
    lagrange_interpolate,
    rref,
    vec,
)


@dataclass(frozen=True)
class IncidenceMatrix:
    """Facet-by-vertex incidences; row ``i`` is a bitmask over vertex indices."""

    masks: tuple
    n_vertices: int

    def __getitem__(self, ij) -> bool:
        i, j = ij
        return bool(self.masks[i] >> j & 1)

    def row(self, i: int) -> frozenset:
        m = self.masks[i]
        return frozenset(j for j in range(self.n_vertices) if m >> j & 1)

    def column(self, j: int) -> frozenset:
        return frozenset(i for i, m in enumerate(self.masks) if m >> j & 1)

    def as_lists(self) -> list:
        return [[self[i, j] for j in range(self.n_vertices)] for i in range(len(self.masks))]


class Polyhedron:
    """A polyhedron given by generators, inequalities, or both.

    Whichever description is missing is computed on first use and cached;
    caches are filled under a lock so concurrent readers see one result.
    The ``facets`` view is always the canonical irredundant description
    derived from the generators, even when the object was built from a
    redundant inequality system.
    """

    def __init__(self, vrep: VRep | None = None, hrep: HRep | None = None):
        if vrep is None and hrep is None:
            raise ValueError("need at least one description")
        if vrep is not None and hrep is not None and vrep.ambient_dim != hrep.ambient_dim:
            raise ValueError("descriptions disagree on the ambient dimension")
        self.ambient_dim = (vrep or hrep).ambient_dim
        self._cache: dict = {}
        self._lock = threading.RLock()
        self._generators = None
        if vrep is not None:
            self._generators = canonical_vrep(vrep) if not vrep.is_empty else vrep
        if hrep is not None:
            self._cache["hrep"] = hrep

    def _cached(self, key, compute):
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    def __repr__(self) -> str:
        if self.is_empty:
            return f"<empty Polyhedron in Q^{self.ambient_dim}>"
        kind = "Polytope" if self.is_bounded else "Polyhedron"
        return f"<{self.dim}-dimensional {kind} in Q^{self.ambient_dim}>"

    # -- descriptions -----------------------------------------------------

    @property
    def vrep(self) -> VRep:
        """Irredundant generators: vertices, extreme rays, lineality basis."""

        def compute():
            if self._generators is None:
                return hrep_to_vrep(self._cache["hrep"])
            return irredundant_vrep(self._generators, self.facets)

        return self._cached("vrep", compute)

    @property
    def hrep(self) -> HRep:
        """The given inequality description, or the canonical one."""
        return self._cached("hrep", lambda: self.facets)

    @property
    def facets(self) -> HRep:
        """Irredundant inequalities plus equations of the affine hull."""
        gens = self._generators
        return self._cached("facets", lambda: vrep_to_hrep(self.vrep if gens is None else gens))

    @property
    def vertices(self) -> tuple:
        """Vertices when pointed; otherwise one point per minimal face."""
        return self.vrep.points

    @property
    def rays(self) -> tuple:
        return self.vrep.rays

    @property
    def lineality(self) -> tuple:
        return self.vrep.lineality

    @property
    def inequalities(self) -> tuple:
        return self.facets.inequalities

    @property
    def equations(self) -> tuple:
        return self.facets.equations

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.inequalities)

    @property
    def is_empty(self) -> bool:
        return self.vrep.is_empty

    @property
    def is_bounded(self) -> bool:
        return not (self.rays or self.lineality)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def dim(self) -> int:
        def compute():
            v = self.vrep
            if v.is_empty:
                return -1
            base = v.points[0]
            dirs = [tuple(x - y for x, y in zip(p, base)) for p in v.points[1:]]
            dirs += list(v.rays) + list(v.lineality)
            return rref(dirs)[2] if dirs else 0

        return self._cached("dim", compute)

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        h = self.hrep
        for a, b in h.inequalities:
            if sum(ai * xi for ai, xi in zip(a, x)) > b:
                return False
        for e, d in h.equations:
            if sum(ei * xi for ei, xi in zip(e, x)) != d:
                return False
        return True

    # -- faces --------------------------------------------------------------

    @property
    def incidence(self) -> IncidenceMatrix:
        def compute():
            verts = self.vertices
            return IncidenceMatrix(tuple(tight_masks(self.inequalities, verts)), len(verts))

        return self._cached("incidence", compute)

    def _require_polytope(self, what: str) -> None:
        if self.is_empty:
            raise GeometryError(f"{what} of the empty set")
        if not self.is_bounded:
            raise GeometryError(f"{what} needs a bounded polyhedron")

    def f_vector(self) -> tuple:
        """Face numbers ``(f_0, ..., f_{dim-1})`` from vertex-facet incidences."""
        self._require_polytope("f-vector")
        return self._cached("f_vector", lambda: _f_vector(self.incidence.masks, self.n_vertices, self.dim))

    def is_simplicial(self) -> bool:
        self._require_polytope("simpliciality")
        d = self.dim
        return all(m.bit_count() == d for m in self.incidence.masks)

    def h_vector(self) -> tuple:
        if not self.is_simplicial():
            raise GeometryError("h-vector is defined here for simplicial polytopes only")
        return h_from_f(self.f_vector(), self.dim)

    def g_vector(self) -> tuple:
        return g_from_h(self.h_vector())

    def minimal_face(self):
        """``(point, basis)`` of the unique minimal face's affine hull.

        Pointed polyhedra return their lexicographically smallest vertex with
        an empty basis.
        """
        if self.is_empty:
            raise GeometryError("the empty set has no faces")
        v = self.vrep
        return min(v.points), tuple(v.lineality)

    # -- metric -----------------------------------------------------------

    def _lattice_frame(self):
        """Integer basis of the affine hull's direction lattice, plus a solver
        mapping direction vectors to coordinates in that basis."""
        d = self.ambient_dim
        eqs = [e for e, _ in self.equations]
        if eqs:
            basis = integer_kernel(eqs)
        else:
            basis = [tuple(int(i == j) for i in range(d)) for j in range(d)]
        r = len(basis)
        if r == 0:
            return basis, lambda v: ()
        cols = [[basis[j][i] for j in range(r)] for i in range(d)]
        _, rows, _ = rref([list(c) for c in zip(*cols)])  # pivots = independent rows of B
        sub = [[Fraction(cols[i][j]) for j in range(r)] for i in rows]
        aug = [sub[i] + [Fraction(int(i == k)) for k in range(r)] for i in range(r)]
        R, _, _ = rref(aug)
        inv = [row[r:] for row in R]

        def coords(v):
            w = [v[i] for i in rows]
            return tuple(sum(inv[a][b] * w[b] for b in range(r)) for a in range(r))

        return basis, coords

    def normalized_volume(self) -> Fraction:
        """``dim! * volume``, measured in the lattice of the affine hull."""
        self._require_polytope("volume")

        def compute():
            verts = self.vertices
            if self.dim == 0:
                return Fraction(1)
            _, coords = self._lattice_frame()
            tri = placing_triangulation(verts)
            total = Fraction(0)
            for cell in tri.cells:
                base = verts[cell[0]]
                rows = [coords([x - y for x, y in zip(verts[i], base)]) for i in cell[1:]]
                total += abs(_rational_det(rows))
            return total

        return self._cached("normalized_volume", compute)

    def volume(self) -> Fraction:
        """Euclidean volume when full-dimensional, lattice-relative otherwise."""
        return self.normalized_volume() / factorial(max(self.dim, 0))

    # -- lattice points -----------------------------------------------------

    def _projection_levels(self):
        """Per-coordinate bound data from the projections onto leading coordinates."""

        def compute():
            verts = self.vertices
            levels = []
            for j in range(self.ambient_dim):
                proj = sorted({v[: j + 1] for v in verts})
                h = vrep_to_hrep(VRep(j + 1, points=proj))
                lower, upper, fixed = [], [], []
                for a, b in h.inequalities:
                    a = [int(x) for x in a]
                    b = int(b)
                    if a[j] > 0:
                        upper.append((a[:j], a[j], b))
                    elif a[j] < 0:
                        lower.append((a[:j], a[j], b))
                for e, c in h.equations:
                    e = [int(x) for x in e]
                    if e[j]:
                        fixed.append((e[:j], e[j], int(c)))
                        break
                levels.append((lower, upper, fixed))
            return levels

        return self._cached("projection_levels", compute)

    def _dilate_points(self, k: int) -> Iterator[tuple]:
        """Lattice points of ``k * P`` via coordinate-wise exact projection bounds."""
        levels = self._projection_levels()
        d = self.ambient_dim
        prefix: list = []

        def rec(j: int):
            lower, upper, fixed = levels[j]
            if fixed:
                e, ej, c = fixed[0]
                num = k * c - sum(x * y for x, y in zip(e, prefix))
                if num % ej:
                    return
                lo = hi = num // ej
            else:
                # aj < 0:  aj*x <= rhs  ->  x >= rhs/aj, rounded up
                lo = max(_ceil_div(k * b - sum(x * y for x, y in zip(a, prefix)), aj)
                         for a, aj, b in lower)
                hi = min((k * b - sum(x * y for x, y in zip(a, prefix))) // aj
                         for a, aj, b in upper)
            for x in range(lo, hi + 1):
                prefix.append(x)
                if j + 1 == d:
                    yield tuple(prefix)
                else:
                    yield from rec(j + 1)
                prefix.pop()

        if self.is_empty:
            return
        if k == 0:
            yield tuple(0 for _ in range(d))
            return
        yield from rec(0)

    def lattice_points(self) -> list:
        """All integer points, sorted lexicographically."""
        if self.is_empty:
            return []
        self._require_polytope("lattice points")
        return sorted(self._dilate_points(1))

    def _interior_test(self, k: int):
        ineqs = [([int(x) for x in a], int(b)) for a, b in _integral(self.inequalities)]

        def strictly_inside(p):
            return all(sum(x * y for x, y in zip(a, p)) < k * b for a, b in ineqs)

        return strictly_inside

    def ehrhart_polynomial(self) -> UnivariatePolynomial:
        """Lattice-point counting polynomial of the dilates of a lattice polytope.

        Samples ``k = 1..ceil(dim/2)`` by direct counting; the remaining
        ``dim - ceil(dim/2)`` samples come from the interior counts at the
        same dilates through Ehrhart-Macdonald reciprocity
        ``ehr(-k) = (-1)^dim * #interior(kP)``.
        """
        self._require_polytope("Ehrhart polynomial")

        def compute():
            if any(x.denominator != 1 for v in self.vertices for x in v):
                raise GeometryError("Ehrhart polynomial needs integral vertices")
            d = self.dim
            samples = [(0, 1)]
            pos = (d + 1) // 2
            neg = d - pos
            sign = -1 if d % 2 else 1
            for k in range(1, pos + 1):
                if k <= neg:
                    inside = self._interior_test(k)
                    total = interior = 0
                    for p in self._dilate_points(k):
                        total += 1
                        if inside(p):
                            interior += 1
                    samples.append((-k, sign * interior))
                else:
                    total = sum(1 for _ in self._dilate_points(k))
                samples.append((k, total))
            return lagrange_interpolate(samples)

        return self._cached("ehrhart", compute)

    def count_dilate(self, k: int) -> int:
        """``|kP ∩ Z^d|`` by direct enumeration."""
        self._require_polytope("lattice points")
        return sum(1 for _ in self._dilate_points(k))


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _integral(rows):
    from .linalg import primitive

    out = []
    for a, b in rows:
        v = primitive(tuple(a) + (b,))
        out.append((v[:-1], v[-1]))
    return out


def _rational_det(rows) -> Fraction:
    from .linalg import determinant

    return determinant(rows)


def _f_vector(facet_masks: Sequence[int], n_vertices: int, dim: int) -> tuple:
    """Face numbers by descending from facets through maximal intersections.

    A face ``F`` of dimension ``k`` has as its facets the inclusion-maximal
    sets among ``F & G`` over facets ``G`` not containing ``F``. Simplices
    short-cut the descent: every vertex subset of a simplex is a face.
    """
    if dim <= 0:
        return ()
    if dim == 1:
        return (n_vertices,)
    levels: list = [set() for _ in range(dim)]
    levels[dim - 1] = set(facet_masks)
    simplex_faces: list = [set() for _ in range(dim)]
    for k in range(dim - 1, 0, -1):
        for F in levels[k]:
            if F.bit_count() == k + 1:
                if F not in simplex_faces[k]:
                    _add_simplex_subfaces(F, k, levels, simplex_faces)
                continue
            if F in simplex_faces[k]:
                continue
            cands = {F & G for G in facet_masks if F & G != F}
            cands = sorted(cands, key=lambda m: -m.bit_count())
            maximal: list = []
            for c in cands:
                if not any(c & m == c for m in maximal):
                    maximal.append(c)
            levels[k - 1].update(maximal)
    f = [n_vertices] + [len(levels[k]) for k in range(1, dim)]
    return tuple(f)


def _add_simplex_subfaces(F: int, k: int, levels, simplex_faces) -> None:
    verts = [j for j in range(F.bit_length()) if F >> j & 1]
    from itertools import combinations

    simplex_faces[k].add(F)
    for size in range(2, k + 1):
        for sub in combinations(verts, size):
            m = 0
            for j in sub:
                m |= 1 << j
            levels[size - 1].add(m)
            simplex_faces[size - 1].add(m)


def h_from_f(f: Sequence[int], d: int) -> tuple:
    """``h_k = sum_i (-1)^(k-i) C(d-i, d-k) f_{i-1}`` with ``f_{-1} = 1``."""
    ff = [1] + list(f)
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, d - k) * ff[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def f_from_h(h: Sequence[int]) -> tuple:
    """Inverse of :func:`h_from_f`: ``f_{j-1} = sum_i C(d-i, j-i) h_i``."""
    d = len(h) - 1
    return tuple(sum(comb(d - i, j - i) * h[i] for i in range(j + 1)) for j in range(1, d + 1))


def g_from_h(h: Sequence[int]) -> tuple:
    d = len(h) - 1
    return (h[0],) + tuple(h[k] - h[k - 1] for k in range(1, d // 2 + 1))


def h_from_g(g: Sequence[int], d: int) -> tuple:
    """Rebuild the h-vector from the g-vector using Dehn-Sommerville symmetry."""
    half = [sum(g[: k + 1]) for k in range(d // 2 + 1)]
    return tuple(half[k] if k <= d // 2 else half[d - k] for k in range(d + 1))


def convex_hull(points: Sequence[Sequence], rays: Sequence[Sequence] = (),
                lineality: Sequence[Sequence] = ()) -> Polyhedron:
    """``conv(points) + pos(rays) + span(lineality)``."""
    vs = [vec(p) for p in list(points) + list(rays) + list(lineality)]
    if not vs:
        raise ValueError("need at least one generator to know the ambient dimension")
    d = len(vs[0])
    if any(len(v) != d for v in vs):
        raise ValueError("generators have inconsistent dimensions")
    return Polyhedron(vrep=VRep(d, points=points, rays=rays, lineality=lineality))


def polyhedron_from_inequalities(A: Sequence[Sequence], b: Sequence,
                                 E: Sequence[Sequence] = (), d: Sequence = (),
                                 ambient_dim: int | None = None) -> Polyhedron:
    """``{x : A x <= b, E x = d}``."""
    rows = list(A) + list(E)
    if ambient_dim is None:
        if not rows:
            raise ValueError("ambient_dim is required when there are no constraints")
        ambient_dim = len(rows[0])
    if len(A) != len(b) or len(E) != len(d):
        raise ValueError("left- and right-hand sides have different lengths")
    if any(len(r) != ambient_dim for r in rows):
        raise ValueError("constraint rows have inconsistent dimensions")
    h = HRep(ambient_dim, inequalities=list(zip(A, b)), equations=list(zip(E, d)))
    return Polyhedron(hrep=h)


def translate(P: Polyhedron, t: Sequence) -> Polyhedron:
    t = vec(t)
    v = P.vrep
    pts = [tuple(x + y for x, y in zip(p, t)) for p in v.points]
    return Polyhedron(vrep=VRep(v.ambient_dim, points=pts, rays=v.rays, lineality=v.lineality))
