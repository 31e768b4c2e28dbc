"""Triangulations of point configurations, GKZ vectors and secondary polytopes.

Cells are sorted tuples of 0-based point indices.  All volumes are
normalized: ``d!`` times Euclidean volume in the lattice of the affine
hull, so lattice configurations get integer GKZ vectors.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CapExceeded, GeometryError
from .hull import HRep, VRep, affine_projection, placing_triangulation, vrep_to_hrep
from .linalg import determinant, solve_affine, to_scalar, vec
from .lp import OPTIMAL, LinearProgram, simplex_standard, solve
from .polyhedron import Polyhedron, convex_hull

DEFAULT_MAX_POINTS = 12
MAX_AFFINE_DIM = 4


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class PointConfiguration:
    """An ordered list of distinct points; index ``i`` labels point ``i``."""

    def __init__(self, points: Iterable[Sequence]):
        pts = [vec(p) for p in points]
        if not pts:
            raise ValueError("empty point configuration")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("points of different lengths")
        if len(set(pts)) != len(pts):
            raise ValueError("repeated points in configuration")
        self.points = tuple(pts)
        self.ambient_dim = d
        pivots, self.dim = affine_projection(pts)
        if self.dim < 1:
            raise GeometryError("a configuration needs affine dimension at least 1")
        self._proj = [tuple(p[c] for c in pivots) for p in pts]
        self.hull = convex_hull(pts)
        self._pair_cache: dict = {}
        self._scale = None

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"<PointConfiguration of {len(self)} points, dimension {self.dim}>"

    # -- simplex geometry in projected coordinates -----------------------

    def _det(self, cell: Sequence[int]):
        rows = [(1,) + self._proj[i] for i in cell]
        return determinant(rows)

    def _orientation(self, face: Sequence[int], x: int) -> int:
        return _sign(self._det(list(face) + [x]))

    def is_independent(self, cell: Sequence[int]) -> bool:
        return len(cell) == self.dim + 1 and self._det(cell) != 0

    def normalized_volume(self) -> Fraction:
        return self.hull.normalized_volume()

    def cell_volume(self, cell: Sequence[int]) -> Fraction:
        """Normalized volume of the simplex on ``cell``."""
        if self._scale is None:
            # projected |det| differs from lattice volume by one global factor
            cells = placing_triangulation(self.points).cells
            proj_total = sum(abs(self._det(c)) for c in cells)
            self._scale = self.normalized_volume() / proj_total
        return self._scale * abs(self._det(cell))

    def barycentric(self, cell: Sequence[int], i: int) -> tuple:
        """Affine coordinates of point ``i`` with respect to ``cell``."""
        A = [[self._proj[j][r] for j in cell] for r in range(self.dim)] + [[1] * len(cell)]
        b = list(self._proj[i]) + [1]
        sol = solve_affine([list(vec(r)) for r in A], b)
        if sol is None:  # pragma: no cover
            raise GeometryError("point outside the affine hull")
        return sol[0]

    def proper_intersection(self, s: Sequence[int], t: Sequence[int]) -> bool:
        """Whether ``conv(s) & conv(t) = conv(s & t)``.

        Maximize the weight a common point puts on ``s - t`` in its
        barycentric coordinates with respect to ``s``; it is zero exactly
        when every common point lies in the shared face.
        """
        key = (tuple(s), tuple(t)) if tuple(s) <= tuple(t) else (tuple(t), tuple(s))
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        s, t = key
        only_s = [k for k, i in enumerate(s) if i not in t]
        if not only_s:
            result = True
        else:
            ns, nt = len(s), len(t)
            A, b = [], []
            for r in range(self.dim):
                A.append([self._proj[i][r] for i in s] + [-self._proj[j][r] for j in t])
                b.append(0)
            A.append([1] * ns + [0] * nt)
            b.append(1)
            A.append([0] * ns + [1] * nt)
            b.append(1)
            c = [int(k in only_s) for k in range(ns)] + [0] * nt
            status, _, value = simplex_standard(A, b, c)
            result = status != OPTIMAL or value == 0
        self._pair_cache[key] = result
        return result

    def boundary_facets(self) -> list:
        """Index sets of configuration points on each facet of the hull."""
        out = []
        for a, b in self.hull.facets.inequalities:
            out.append(frozenset(i for i, p in enumerate(self.points)
                                 if sum(x * y for x, y in zip(a, p)) == b))
        return out


@dataclass(frozen=True)
class Triangulation:
    cells: tuple

    def __post_init__(self):
        cells = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in self.cells))
        object.__setattr__(self, "cells", cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def vertices(self) -> set:
        return {i for c in self.cells for i in c}

    def one_based(self) -> list:
        return [[i + 1 for i in c] for c in self.cells]


def check_triangulation(cfg: PointConfiguration, T: Triangulation) -> None:
    """Raise GeometryError unless ``T`` triangulates ``conv(cfg)``."""
    if not T.cells:
        raise GeometryError("a triangulation needs at least one cell")
    n = len(cfg)
    for c in T.cells:
        if any(i < 0 or i >= n for i in c):
            raise GeometryError(f"cell {c} refers to a missing point")
        if not cfg.is_independent(c):
            raise GeometryError(f"cell {c} is not a full-dimensional simplex")
    if len(set(T.cells)) != len(T.cells):
        raise GeometryError("repeated cell")
    for s, t in itertools.combinations(T.cells, 2):
        if not cfg.proper_intersection(s, t):
            raise GeometryError(f"cells {s} and {t} overlap improperly")
    if sum(cfg.cell_volume(c) for c in T.cells) != cfg.normalized_volume():
        raise GeometryError("cells do not cover the convex hull")


def _candidates(cfg: PointConfiguration) -> list:
    return [c for c in itertools.combinations(range(len(cfg)), cfg.dim + 1) if cfg._det(c) != 0]


def all_triangulations(cfg: PointConfiguration, *, max_points: int = DEFAULT_MAX_POINTS) -> list:
    """Every triangulation of ``cfg`` (cells on any subset of its points).

    Backtracking: keep a partial complex, pick its smallest interior ridge
    that has a cell on one side only, and branch over the candidate
    simplices that close it from the other side.  The search is seeded by
    the cells through a fixed hull vertex; a branch only accepts the
    triangulations in which its seed is the smallest cell through that
    vertex, so each triangulation is produced once.
    """
    if len(cfg) > max_points:
        raise CapExceeded(f"{len(cfg)} points exceed the cap of {max_points}")
    if cfg.dim > MAX_AFFINE_DIM:
        raise CapExceeded(f"affine dimension {cfg.dim} exceeds {MAX_AFFINE_DIM}")
    cands = _candidates(cfg)
    compat = [0] * len(cands)
    for a, b in itertools.combinations(range(len(cands)), 2):
        if cfg.proper_intersection(cands[a], cands[b]):
            compat[a] |= 1 << b
            compat[b] |= 1 << a
    bnd = cfg.boundary_facets()

    def on_boundary(face) -> bool:
        return any(set(face) <= f for f in bnd)

    # interior ridge -> [(candidate, side of its apex)]
    sides: dict = {}
    for k, c in enumerate(cands):
        for apex in c:
            face = tuple(i for i in c if i != apex)
            if not on_boundary(face):
                sides.setdefault(face, []).append((k, cfg._orientation(face, apex)))

    hull_vertices = set(cfg.hull.vertices)
    v0 = next(i for i, p in enumerate(cfg.points) if p in hull_vertices)
    through_v0 = [k for k, c in enumerate(cands) if v0 in c]
    target = cfg.normalized_volume()
    found = []

    def extend(chosen: list, allowed: int, ridges: Counter) -> None:
        open_ridges = [f for f, m in ridges.items() if m == 1]
        if not open_ridges:
            if sum(cfg.cell_volume(cands[k]) for k in chosen) == target:
                found.append(Triangulation([cands[k] for k in chosen]))
            return
        face = min(open_ridges)
        owner = next(k for k in chosen if set(face) < set(cands[k]))
        apex = next(i for i in cands[owner] if i not in face)
        side = cfg._orientation(face, apex)
        for k, s in sides.get(face, ()):
            if s == side or s == 0 or not allowed >> k & 1:
                continue
            new = Counter(ridges)
            c = cands[k]
            for a in c:
                f = tuple(i for i in c if i != a)
                if f in sides:
                    new[f] += 1
            extend(chosen + [k], allowed & compat[k], new)

    for pos, start in enumerate(through_v0):
        allowed = compat[start]
        for smaller in through_v0[:pos]:
            allowed &= ~(1 << smaller)
        ridges = Counter()
        c = cands[start]
        for a in c:
            f = tuple(i for i in c if i != a)
            if f in sides:
                ridges[f] += 1
        extend([start], allowed, ridges)
    return sorted(found, key=lambda T: T.cells)


def gkz_vector(cfg: PointConfiguration, T: Triangulation, *, check: bool = True) -> tuple:
    """Per point, the total normalized volume of the cells containing it."""
    if check:
        check_triangulation(cfg, T)
    out = [Fraction(0)] * len(cfg)
    for c in T.cells:
        v = cfg.cell_volume(c)
        for i in c:
            out[i] += v
    return tuple(out)


def secondary_polytope(cfg: PointConfiguration, *, max_points: int = DEFAULT_MAX_POINTS) -> Polyhedron:
    tris = all_triangulations(cfg, max_points=max_points)
    return Polyhedron(vrep=VRep(len(cfg), points=sorted({gkz_vector(cfg, T, check=False) for T in tris})))


def _fold_rows(cfg: PointConfiguration, T: Triangulation) -> list:
    """Rows ``r`` over the point heights; ``T`` is induced by heights ``w``
    iff ``r.w > 0`` for all of them."""
    m = len(cfg)
    rows = []
    ridges: dict = {}
    for c in T.cells:
        for apex in c:
            ridges.setdefault(tuple(i for i in c if i != apex), []).append((c, apex))
    for face, owners in ridges.items():
        if len(owners) != 2:
            continue
        (c, _), (_, q) = owners
        rows.append(_lift_row(m, c, q, cfg.barycentric(c, q)))
    used = T.vertices()
    for i in range(m):
        if i in used:
            continue
        for c in T.cells:
            mu = cfg.barycentric(c, i)
            if all(x >= 0 for x in mu):
                rows.append(_lift_row(m, c, i, mu))
                break
    return rows


def _lift_row(m: int, cell, q: int, mu) -> tuple:
    row = [Fraction(0)] * m
    row[q] += 1
    for j, x in zip(cell, mu):
        row[j] -= x
    return tuple(row)


def is_regular(cfg: PointConfiguration, T: Triangulation):
    """Heights inducing ``T`` as the lower hull of the lifted points, or None.

    Solves: maximize ``t`` subject to every fold condition ``r.w >= t``,
    ``-1 <= w <= 1`` and ``t <= 1``; ``T`` is regular iff the optimum is positive.
    """
    check_triangulation(cfg, T)
    m = len(cfg)
    rows = _fold_rows(cfg, T)
    if not rows:
        return tuple(Fraction(0) for _ in range(m))
    ineqs = []
    for r in rows:  # t - r.w <= 0
        ineqs.append((tuple(-x for x in r) + (1,), 0))
    for i in range(m):
        e = tuple(int(j == i) for j in range(m)) + (0,)
        ineqs.append((e, 1))
        ineqs.append((tuple(-x for x in e), 1))
    ineqs.append((tuple([0] * m) + (1,), 1))
    region = Polyhedron(hrep=HRep(m + 1, inequalities=ineqs))
    res = solve(LinearProgram(region, tuple([0] * m) + (1,)))
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.optimizer[:m]


def regular_subdivision(cfg: PointConfiguration, weights: Sequence) -> list:
    """Cells of the lower hull of the points lifted by ``weights``."""
    w = vec(weights)
    if len(w) != len(cfg):
        raise ValueError("one weight per point required")
    lifted = [p + (h,) for p, h in zip(cfg._proj, w)]
    h = vrep_to_hrep(VRep(cfg.dim + 1, points=lifted))
    if h.equations:
        return [tuple(range(len(cfg)))]
    cells = []
    for a, b in h.inequalities:
        if a[-1] < 0:
            cells.append(tuple(i for i, p in enumerate(lifted)
                               if sum(x * y for x, y in zip(a, p)) == b))
    return sorted(cells)


def cube_vertex_symmetries(n: int) -> list:
    """Signed coordinate permutations of ``[0,1]^n`` acting on the vertices
    in ``itertools.product([0, 1], repeat=n)`` order."""
    if not 1 <= n <= 4:
        raise ValueError("cube symmetries are provided for 1 <= n <= 4")
    verts = list(itertools.product((0, 1), repeat=n))
    where = {v: k for k, v in enumerate(verts)}
    group = set()
    for perm in itertools.permutations(range(n)):
        for flips in itertools.product((0, 1), repeat=n):
            image = [where[tuple(v[perm[i]] ^ flips[i] for i in range(n))] for v in verts]
            group.add(tuple(image))
    return sorted(group)


def _act(g: Sequence[int], v: tuple) -> tuple:
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[g[i]] = x
    return tuple(out)


def orbit_decomposition(vectors: Iterable[Sequence], generators: Sequence[Sequence[int]]) -> list:
    """Group distinct vectors into orbits of the group generated by
    ``generators`` (permutations of coordinates, 0-based, ``i -> g[i]``).

    Returns ``(representative, orbit size)`` pairs, the representative
    being the lexicographically smallest orbit member, sorted by
    representative.
    """
    vs = sorted({tuple(vec(v)) for v in vectors})
    gens = [tuple(int(x) for x in g) for g in generators]
    if vs:
        n = len(vs[0])
        if any(len(v) != n for v in vs):
            raise ValueError("vectors of different lengths")
        for g in gens:
            if sorted(g) != list(range(n)):
                raise ValueError(f"generator {g} is not a permutation of {n} coordinates")
    seen: set = set()
    out = []
    for v in vs:
        if v in seen:
            continue
        orbit = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for g in gens:
                x = _act(g, u)
                if x not in orbit:
                    orbit.add(x)
                    queue.append(x)
        seen |= orbit
        out.append((min(orbit), len(orbit)))
    return sorted(out)


def explode_layout(cfg: PointConfiguration, T: Triangulation, factor=1) -> list:
    """Cells pushed away from the centre: every cell is translated by
    ``factor * (cell barycentre - barycentre of the configuration)``."""
    factor = to_scalar(factor)
    if factor < 0:
        raise ValueError("explode factor must be nonnegative")
    d = cfg.ambient_dim
    centre = tuple(sum(p[r] for p in cfg.points) / len(cfg) for r in range(d))
    out = []
    for c in T.cells:
        bary = tuple(sum(cfg.points[i][r] for i in c) / len(c) for r in range(d))
        shift = tuple(factor * (b - z) for b, z in zip(bary, centre))
        out.append([tuple(x + s for x, s in zip(cfg.points[i], shift)) for i in c])
    return out
