"""Exact linear programming over polyhedra.

The solver is a dense two-phase simplex over Fractions with Bland's
rule.  Free variables are split into positive and negative parts and
every inequality gets a slack; the optimum found by the simplex is then
slid along its tight face until it reaches a vertex, so the reported
optimizer of a pointed region is always a vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GeometryError
from .hull import HRep
from .linalg import dot, nullspace, to_scalar, vec
from .polyhedron import Polyhedron

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LinearProgram:
    feasible: Polyhedron
    objective: tuple
    constant: Fraction = Fraction(0)
    sense: str = "max"

    def __post_init__(self):
        object.__setattr__(self, "objective", vec(self.objective))
        object.__setattr__(self, "constant", to_scalar(self.constant))
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', not {self.sense!r}")
        if len(self.objective) != self.feasible.ambient_dim:
            raise ValueError(
                f"objective has {len(self.objective)} entries, "
                f"feasible region lives in dimension {self.feasible.ambient_dim}"
            )


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    optimizer: tuple | None = None


def simplex_standard(A: Sequence[Sequence], b: Sequence, c: Sequence):
    """Maximize ``c.x`` subject to ``A x = b``, ``x >= 0``.

    Returns ``(status, x, value)``; ``x`` and ``value`` are ``None``
    unless the status is optimal.
    """
    m = len(A)
    n = len(c)
    c = list(vec(c))
    rows = []
    for row, bi in zip(A, b):
        row, bi = list(vec(row)), to_scalar(bi)
        if bi < 0:
            row, bi = [-x for x in row], -bi
        rows.append(row + [bi])
    # phase one: one artificial per row, all initially basic
    T = [r[:n] + [Fraction(int(i == j)) for j in range(m)] + [r[n]] for i, r in enumerate(rows)]
    basis = [n + i for i in range(m)]
    width = n + m
    obj = [Fraction(0)] * width + [Fraction(0)]
    for j in range(n, width):
        obj[j] = Fraction(1)
    for r in T:  # price out the artificial basis
        obj = [o - x for o, x in zip(obj, r)]
    if _run(T, obj, basis, range(width)) == UNBOUNDED:  # pragma: no cover
        raise AssertionError("phase one cannot be unbounded")
    if obj[-1] != 0:
        return INFEASIBLE, None, None
    # drive zero-valued artificials out of the basis, drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i], basis[i]
                continue
            _pivot(T, obj, basis, i, col)
        i += 1
    T = [r[:n] + [r[-1]] for r in T]
    # phase two
    obj = [-x for x in c] + [Fraction(0)]
    for i, bj in enumerate(basis):
        f = obj[bj]
        if f:
            obj = [o - f * x for o, x in zip(obj, T[i])]
    if _run(T, obj, basis, range(n)) == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        x[bj] = T[i][-1]
    return OPTIMAL, tuple(x), obj[-1]


def _pivot(T, obj, basis, r, col):
    piv = T[r][col]
    row = [x / piv for x in T[r]] if piv != 1 else T[r]
    T[r] = row
    for i in range(len(T)):
        if i != r:
            f = T[i][col]
            if f:
                T[i] = [x - f * y for x, y in zip(T[i], row)]
    f = obj[col]
    if f:
        obj[:] = [x - f * y for x, y in zip(obj, row)]
    basis[r] = col


def _run(T, obj, basis, columns) -> str:
    columns = list(columns)
    while True:
        # Bland: lowest-index improving column, lowest-index leaving variable
        col = next((j for j in columns if obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        best = None
        for i, r in enumerate(T):
            if r[col] > 0:
                ratio = r[-1] / r[col]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, obj, basis, best[1], col)


def _solve_hrep(h: HRep, c: tuple):
    """Maximize ``c.x`` over ``h``; returns ``(status, x, value)``."""
    d = h.ambient_dim
    ineqs = list(h.inequalities)
    eqs = list(h.equations)
    p = len(ineqs)
    A, b = [], []
    for k, (a, rhs) in enumerate(ineqs):
        A.append(list(a) + [-x for x in a] + [int(j == k) for j in range(p)])
        b.append(rhs)
    for e, rhs in eqs:
        A.append(list(e) + [-x for x in e] + [0] * p)
        b.append(rhs)
    cost = list(c) + [-x for x in c] + [0] * p
    if not A:
        if any(c):
            return UNBOUNDED, None, None
        return OPTIMAL, tuple(Fraction(0) for _ in range(d)), Fraction(0)
    status, y, value = simplex_standard(A, b, cost)
    if status != OPTIMAL:
        return status, None, None
    x = tuple(y[i] - y[d + i] for i in range(d))
    return OPTIMAL, _purify(h, x), value


def _purify(h: HRep, x: tuple) -> tuple:
    """Slide a feasible point along its tight face until no free direction
    remains (a vertex, or a point of the minimal face if there is lineality)."""
    pinned = [tuple(e) for e, _ in h.equations]
    while True:
        tight = [a for a, b in h.inequalities if dot(a, x) == b]
        basis = nullspace(pinned + tight, ncols=len(x))
        if not basis:
            return x
        direction = basis[0]
        step = None
        for sign in (1, -1):
            dvec = tuple(sign * t for t in direction)
            limits = [
                (b - dot(a, x)) / dot(a, dvec)
                for a, b in h.inequalities
                if dot(a, dvec) > 0
            ]
            if limits:
                step = (min(limits), dvec)
                break
        if step is None:
            pinned.append(direction)  # a lineality direction, nothing to hit
            continue
        t, dvec = step
        x = tuple(xi + t * di for xi, di in zip(x, dvec))


def solve(lp: LinearProgram) -> LPResult:
    """Optimize ``c.x + k`` over the feasible region."""
    c = lp.objective if lp.sense == "max" else tuple(-x for x in lp.objective)
    status, x, _ = _solve_hrep(lp.feasible.hrep, c)
    if status != OPTIMAL:
        return LPResult(status)
    value = dot(lp.objective, x) + lp.constant
    return LPResult(OPTIMAL, value, x)


def optimal_face(lp: LinearProgram) -> Polyhedron:
    """The set of optimal solutions, as a polyhedron."""
    result = solve(lp)
    if result.status != OPTIMAL:
        raise GeometryError(f"no optimal face: the program is {result.status}")
    h = lp.feasible.hrep
    level = result.value - lp.constant
    extra = ((lp.objective, level),) if any(lp.objective) else ()
    face = HRep(h.ambient_dim, inequalities=h.inequalities, equations=tuple(h.equations) + extra)
    return Polyhedron(hrep=face)


def maximize(P: Polyhedron, c, k=0) -> LPResult:
    return solve(LinearProgram(P, c, k, "max"))


def minimize(P: Polyhedron, c, k=0) -> LPResult:
    return solve(LinearProgram(P, c, k, "min"))
