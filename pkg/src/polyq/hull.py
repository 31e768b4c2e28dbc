"""Conversion between generator and inequality descriptions.

Both directions go through one double description kernel working on
integer cone data: ``vrep_to_hrep`` homogenizes the generators and asks
for the extreme rays of the polar cone, ``hrep_to_vrep`` asks for the
extreme rays of the homogenized constraint cone after factoring out its
lineality. A beneath-beyond placing triangulation lives here too; it is
used for volumes and as a second, independent route to facets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .linalg import (
    int_determinant,
    nullspace,
    rank,
    primitive,
    rref,
    solve_affine,
    vec,
)


@dataclass(frozen=True)
class VRep:
    """Generators: conv(points) + pos(rays) + span(lineality)."""

    ambient_dim: int
    points: tuple = ()
    rays: tuple = ()
    lineality: tuple = ()

    def __post_init__(self):
        d = self.ambient_dim
        for name in ("points", "rays", "lineality"):
            vs = tuple(vec(v) for v in getattr(self, name))
            if any(len(v) != d for v in vs):
                raise ValueError(f"{name} must all have length {d}")
            object.__setattr__(self, name, vs)
        if any(not any(r) for r in self.rays + self.lineality):
            raise ValueError("rays and lineality vectors must be nonzero")

    @property
    def is_empty(self) -> bool:
        return not (self.points or self.rays or self.lineality)


@dataclass(frozen=True)
class HRep:
    """``a.x <= b`` for each inequality, ``e.x = d`` for each equation."""

    ambient_dim: int
    inequalities: tuple = ()
    equations: tuple = ()

    def __post_init__(self):
        d = self.ambient_dim
        for name in ("inequalities", "equations"):
            rows = []
            for a, b in getattr(self, name):
                a = vec(a)
                if len(a) != d:
                    raise ValueError(f"{name} normals must have length {d}")
                rows.append((a, Fraction(b)))
            object.__setattr__(self, name, tuple(rows))

    @classmethod
    def empty(cls, d: int) -> "HRep":
        return cls(d, inequalities=(((0,) * d, -1),))

    @property
    def is_empty(self) -> bool:
        """True only for the explicit ``0.x <= -1`` marker (or ``0 = d != 0``)."""
        for a, b in self.inequalities:
            if not any(a) and b < 0:
                return True
        for e, d in self.equations:
            if not any(e) and d != 0:
                return True
        return False


@dataclass
class DDStats:
    peak_rays: int = 0
    insertions: int = 0


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _initial_basis(rows: list, n: int) -> list:
    """Indices of the first ``n`` linearly independent rows, in order."""
    chosen = []
    reduced = []  # echelon rows with their pivot column
    for idx, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        for piv, er in reduced:
            if r[piv]:
                f = r[piv]
                r = [x - f * y for x, y in zip(r, er)]
        p = next((c for c in range(n) if r[c]), None)
        if p is None:
            continue
        inv = r[p]
        r = [x / inv for x in r]
        reduced.append((p, r))
        chosen.append(idx)
        if len(chosen) == n:
            break
    return chosen


def _inverse_columns(B: list) -> list:
    """Columns of ``B^-1`` for an invertible square matrix, as int vectors."""
    n = len(B)
    aug = [list(map(Fraction, B[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, _, _ = rref(aug)
    inv = [row[n:] for row in R]
    return [primitive([inv[i][j] for i in range(n)]) for j in range(n)]


def extreme_rays(rows: Sequence[Sequence[int]], n: int, *, lexicographic: bool = False,
                 stats: DDStats | None = None) -> list:
    """Extreme rays of the pointed cone ``{y : r.y >= 0 for r in rows}``.

    ``rows`` must be integer vectors spanning ``R^n`` so that the cone is
    pointed. Rays come back as primitive integer tuples, sorted.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    order = list(range(len(rows)))
    if lexicographic:
        order.sort(key=lambda i: rows[i])
    ordered = [rows[i] for i in order]
    basis_local = _initial_basis(ordered, n)
    if len(basis_local) < n:
        raise ValueError("constraint rows do not span the ambient space")
    basis = [order[i] for i in basis_local]
    in_basis = set(basis)
    rest = [i for i in order if i not in in_basis]

    # Initial simplicial cone: ray j is tight on every basis row except j.
    cols = _inverse_columns([rows[i] for i in basis])
    all_basis_bits = 0
    for i in basis:
        all_basis_bits |= 1 << i
    rays = list(cols)
    zeros = [all_basis_bits & ~(1 << basis[j]) for j in range(n)]
    dim = n
    if stats is not None:
        stats.peak_rays = max(stats.peak_rays, len(rays))

    for i in rest:
        a = rows[i]
        bit = 1 << i
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        if stats is not None:
            stats.insertions += 1
        if not neg:
            zeros = [z | bit if v == 0 else z for z, v in zip(zeros, vals)]
            continue

        # For each processed constraint, which rays are tight on it.
        tight_on: dict[int, int] = {}
        for k, z in enumerate(zeros):
            kb = 1 << k
            for c in _bits(z):
                tight_on[c] = tight_on.get(c, 0) | kb
        everyone = (1 << len(rays)) - 1
        need = dim - 2

        new_rays = []
        new_zeros = []
        for p in pos:
            zp = zeros[p]
            rp = rays[p]
            vp = vals[p]
            pair_p = 1 << p
            for q in neg:
                common = zp & zeros[q]
                if common.bit_count() < need:
                    continue
                target = pair_p | (1 << q)
                s = everyone
                for c in _bits(common):
                    s &= tight_on[c]
                    if s == target:
                        break
                if s != target:
                    continue
                rq = rays[q]
                vq = vals[q]
                r = [vp * y - vq * x for x, y in zip(rp, rq)]
                g = 0
                for x in r:
                    g = gcd(g, x)
                new_rays.append(tuple(x // g for x in r))
                new_zeros.append(common | bit)

        kept = [k for k, v in enumerate(vals) if v >= 0]
        rays = [rays[k] for k in kept] + new_rays
        zeros = [zeros[k] | bit if vals[k] == 0 else zeros[k] for k in kept] + new_zeros
        if not pos:
            dim = rank(rays)
        if stats is not None:
            stats.peak_rays = max(stats.peak_rays, len(rays))
    return sorted(rays)


def double_description(generators: Sequence[Sequence], *, lexicographic: bool = False,
                       stats: DDStats | None = None) -> list:
    """Facet normals ``u`` (with ``u.g >= 0`` on the cone) of ``pos(generators)``.

    Generators that do not span the ambient space are handled by working
    in coordinates of their span; the returned normals are then only
    meaningful on that span. The zero cone and cones that fill their span
    have no facets.
    """
    gens = [primitive(g) for g in generators if any(g)]
    if not gens:
        return []
    n = len(gens[0])
    _, pivots, r = rref(gens)
    proj = [tuple(g[c] for c in pivots) for g in gens]
    normals = extreme_rays(proj, r, lexicographic=lexicographic, stats=stats)
    out = []
    for u in normals:
        full = [0] * n
        for c, x in zip(pivots, u):
            full[c] = x
        out.append(tuple(full))
    return out


def _reduce_mod(u: Sequence, echelon: list) -> tuple:
    """Clear the pivot coordinates of ``u`` using reduced echelon rows."""
    u = [Fraction(x) for x in u]
    for row in echelon:
        p = next(c for c, x in enumerate(row) if x)
        if u[p]:
            f = u[p] / row[p]
            u = [x - f * y for x, y in zip(u, row)]
    return tuple(u)


def vrep_to_hrep(v: VRep, *, lexicographic: bool = False,
                 stats: DDStats | None = None) -> HRep:
    """Irredundant inequalities and affine-hull equations of a V-description.

    A V-description without points but with rays or lineality is read as a
    cone with apex at the origin. The empty description gives the explicit
    empty marker.
    """
    d = v.ambient_dim
    if v.is_empty:
        return HRep.empty(d)
    points = v.points or (tuple(Fraction(0) for _ in range(d)),)
    gens = [(Fraction(1),) + p for p in points]
    gens += [(Fraction(0),) + r for r in v.rays]
    for l in v.lineality:
        gens.append((Fraction(0),) + l)
        gens.append((Fraction(0),) + tuple(-x for x in l))
    gens = [primitive(g) for g in gens]

    # equation functionals e0 + e'.x = 0, stored as (e', e0) so that
    # row reduction pivots on the coordinates before the constant
    eq_rows = [tuple(e[1:]) + (e[0],) for e in nullspace(gens)]
    eq_echelon = []
    if eq_rows:
        R, _, rk = rref(eq_rows)
        eq_echelon = R[:rk]

    ineqs = set()
    for u in double_description(gens, lexicographic=lexicographic, stats=stats):
        u = _reduce_mod(tuple(u[1:]) + (u[0],), eq_echelon)
        u = primitive(u)
        a = tuple(-x for x in u[:-1])
        if not any(a):
            continue  # the face at infinity, or trivially satisfied
        ineqs.add((a, u[-1]))
    equations = []
    for row in eq_echelon:
        e = primitive(row)
        equations.append((e[:-1], -e[-1]))
    return HRep(d, inequalities=tuple(sorted(ineqs)), equations=tuple(sorted(equations)))


def hrep_to_vrep(h: HRep, *, lexicographic: bool = False,
                 stats: DDStats | None = None) -> VRep:
    """Minimal generators of an H-description.

    Points are the vertices when the polyhedron is pointed; otherwise one
    point per minimal face, reduced modulo the lineality space. An
    infeasible system yields an empty VRep.
    """
    d = h.ambient_dim
    if h.is_empty:
        return VRep(d)
    if h.equations:
        sol = solve_affine([e for e, _ in h.equations], [c for _, c in h.equations])
        if sol is None:
            return VRep(d)
        x0, basis = sol
    else:
        x0 = tuple(Fraction(0) for _ in range(d))
        basis = [tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d)]
    k = len(basis)

    # homogeneous cone in (t, z): (b - a.x0) t - (a N) z >= 0, and t >= 0
    rows = [(1,) + (0,) * k]
    for a, b in h.inequalities:
        aN = [sum(ai * ni for ai, ni in zip(a, col)) for col in basis]
        rhs = b - sum(ai * xi for ai, xi in zip(a, x0))
        row = primitive((rhs,) + tuple(-x for x in aN))
        if any(row):
            rows.append(row)
        elif rhs < 0:
            return VRep(d)
    lin = nullspace(rows)
    R, pivots, r = rref(rows)
    space = [R[i] for i in range(r)]  # basis of the row space = lineality complement
    cone_rows = [tuple(sum(x * y for x, y in zip(row, s)) for s in space) for row in rows]
    cone_rows = [primitive(cr) for cr in cone_rows]
    cone_rows = [cr for cr in cone_rows if any(cr)]
    ws = extreme_rays(cone_rows, r, lexicographic=lexicographic, stats=stats)

    def lift(w):
        y = [sum(wi * s[j] for wi, s in zip(w, space)) for j in range(k + 1)]
        return y[0], y[1:]

    def embed(z):
        return tuple(sum(zj * col[i] for zj, col in zip(z, basis)) for i in range(d))

    points, rays = [], []
    for w in ws:
        t, z = lift(w)
        if t > 0:
            pz = embed([x / t for x in z])
            points.append(tuple(x0i + pi for x0i, pi in zip(x0, pz)))
        else:
            rays.append(embed(z))
    if not points:
        return VRep(d)
    lineality = [embed(l[1:]) for l in lin]
    return canonical_vrep(VRep(d, points=points, rays=rays, lineality=lineality))


def canonical_vrep(v: VRep) -> VRep:
    """Sorted, deduplicated generators with points and rays reduced modulo lineality."""
    d = v.ambient_dim
    lin_echelon = []
    if v.lineality:
        R, pivots, r = rref(v.lineality)
        lin_echelon = [R[i] for i in range(r)]
    lineality = sorted(_sign_normal(primitive(l)) for l in lin_echelon)
    points = sorted({_reduce_mod(p, lin_echelon) for p in v.points})
    rays = set()
    for ray in v.rays:
        red = _reduce_mod(ray, lin_echelon)
        if any(red):
            rays.add(primitive(red))
    return VRep(d, points=points, rays=sorted(rays), lineality=lineality)


def tight_masks(inequalities: Sequence, points: Sequence = (), rays: Sequence = ()) -> list:
    """Per inequality ``a.x <= b``, the bitmask of points (then rays,
    shifted past the points) on which it is tight.  Integer arithmetic."""
    rows = []
    for a, b in inequalities:
        r = primitive(tuple(a) + (b,))
        rows.append((r[:-1], r[-1]))
    gens = [_homogeneous(vec(p)) for p in points]
    gens += [(0,) + primitive(vec(r)) for r in rays]
    masks = []
    for a, b in rows:
        m = 0
        for j, (w, *x) in enumerate(gens):
            if sum(ai * xi for ai, xi in zip(a, x)) == b * w:
                m |= 1 << j
        masks.append(m)
    return masks


def irredundant_vrep(v: VRep, h: HRep) -> VRep:
    """Drop the generators of ``v`` that are not extreme, given its facets ``h``.

    The lineality space is recomputed as the common kernel of all facet and
    equation normals, which also catches lines spanned by opposite rays.
    """
    if v.is_empty:
        return v
    d = v.ambient_dim
    eqs = [tuple(e) for e, _ in h.equations]
    ineqs = list(h.inequalities)
    normals = [tuple(a) for a, _ in ineqs] + eqs
    lin = [] if normals and rank(normals) == d else nullspace(normals, ncols=d)
    cv = canonical_vrep(VRep(d, points=v.points, rays=v.rays, lineality=lin))
    target = d - len(lin)
    masks = tight_masks(ineqs, cv.points, cv.rays)
    npts = len(cv.points)

    int_eqs = [primitive(e) for e in eqs]
    int_normals = [primitive(a) for a, _ in ineqs]

    def tight_rank(j: int) -> int:
        return rank(int_eqs + [int_normals[k] for k, m in enumerate(masks) if m >> j & 1])

    points = [p for j, p in enumerate(cv.points) if tight_rank(j) == target]
    rays = [r for j, r in enumerate(cv.rays) if tight_rank(npts + j) == target - 1]
    return VRep(d, points=points, rays=rays, lineality=cv.lineality)


def _sign_normal(v: tuple) -> tuple:
    first = next((x for x in v if x), 0)
    return tuple(-x for x in v) if first < 0 else v


# ---------------------------------------------------------------------------
# beneath-beyond placing triangulation


@dataclass
class PlacingResult:
    cells: list
    #: boundary (d-1)-faces mapped to their outward hyperplane (a, b), a.x <= b
    boundary: dict = field(default_factory=dict)
    pivots: list = field(default_factory=list)
    dim: int = 0


def affine_projection(points: Sequence[Sequence]):
    """Coordinates (a subset of the original ones) injective on the affine hull.

    Returns ``(pivots, dim)``.
    """
    pts = [vec(p) for p in points]
    base = pts[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in pts[1:]]
    if not diffs:
        return [], 0
    _, pivots, r = rref(diffs)
    return pivots, r


def _homogeneous(p: Sequence) -> tuple:
    """Integer ``(w, w*x)`` with ``w > 0`` minimal."""
    den = 1
    for x in p:
        den = den * x.denominator // gcd(den, x.denominator)
    return (den,) + tuple(int(x * den) for x in p)


def _hyperplane(face: list, inside: tuple):
    """Primitive integer (a, b), a.x = b through the homogeneous ``face`` rows,
    oriented so that the homogeneous point ``inside`` satisfies a.x < b.

    The normal is the generalized cross product of the rows (signed
    maximal minors).
    """
    k = len(face[0])
    u = []
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in face]
        u.append((-1) ** j * int_determinant(minor))
    g = 0
    for x in u:
        g = gcd(g, x)
    u = [x // g for x in u]
    # u0*w + u'.X = 0 on the face  ->  u'.x <= -u0 after orientation
    a = tuple(u[1:])
    b = -u[0]
    side = sum(x * y for x, y in zip(a, inside[1:])) - b * inside[0]
    if side > 0:
        a = tuple(-x for x in a)
        b = -b
    return a, b


def placing_triangulation(points: Sequence[Sequence], order: Sequence[int] | None = None,
                          *, lexicographic: bool = False) -> PlacingResult:
    """Placing (beneath-beyond) triangulation of ``conv(points)``.

    Points are inserted in ``order`` (input order by default, or
    lexicographic). The first affinely independent points along that order
    form the initial simplex; every later point is joined to the boundary
    faces it sees strictly from beyond. Cells are sorted index tuples.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise ValueError("no points to triangulate")
    pivots, dim = affine_projection(pts)
    if dim == 0:
        raise ValueError("all points coincide; nothing to triangulate")
    proj = [tuple(p[c] for c in pivots) for p in pts]
    hom = [_homogeneous(p) for p in proj]
    if order is None:
        order = list(range(len(pts)))
        if lexicographic:
            order.sort(key=lambda i: pts[i])
    order = list(order)

    # initial simplex: greedy affinely independent points along the order
    simplex = [order[0]]
    basis_rows: list = []
    for i in order[1:]:
        diff = [x - y for x, y in zip(proj[i], proj[simplex[0]])]
        trial = basis_rows + [diff]
        if rref(trial)[2] == len(trial):
            basis_rows = trial
            simplex.append(i)
            if len(simplex) == dim + 1:
                break
    cells = [tuple(sorted(simplex))]
    boundary: dict = {}
    for v in simplex:
        face = tuple(sorted(set(simplex) - {v}))
        boundary[face] = _hyperplane([hom[j] for j in face], hom[v])

    placed = set(simplex)
    for i in order:
        if i in placed:
            continue
        placed.add(i)
        w, *p = hom[i]
        visible = [f for f, (a, b) in boundary.items()
                   if sum(x * y for x, y in zip(a, p)) > b * w]
        if not visible:
            continue
        for f in visible:
            del boundary[f]
        for f in visible:
            cells.append(tuple(sorted(f + (i,))))
            for v in f:
                ridge = tuple(x for x in f if x != v)
                nf = tuple(sorted(ridge + (i,)))
                # two visible faces sharing the ridge make nf interior
                if nf in boundary:
                    del boundary[nf]
                else:
                    boundary[nf] = (v, None)
        for nf, val in list(boundary.items()):
            if val[1] is None:
                boundary[nf] = _hyperplane([hom[j] for j in nf], hom[val[0]])
    return PlacingResult(cells=sorted(cells), boundary=boundary, pivots=pivots, dim=dim)


def placing_facets(points: Sequence[Sequence], **kwargs) -> list:
    """Facet hyperplanes (in affine-hull coordinates) from a placing triangulation.

    Boundary faces of the triangulation that span the same hyperplane are
    merged; the result is the set of distinct primitive ``(a, b)`` pairs.
    """
    res = placing_triangulation(points, **kwargs)
    return sorted(set(res.boundary.values()))
