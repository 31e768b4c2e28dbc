"""Named polytope families and the Gelfand-Tsetlin toolkit."""

from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .hull import HRep, VRep
from .linalg import determinant, vec
from .polyhedron import Polyhedron


def cube(d: int) -> Polyhedron:
    """The 0/1 cube; vertices in lexicographic order of ``product([0, 1], repeat=d)``."""
    if d < 1:
        raise ValueError("dimension must be positive")
    return Polyhedron(vrep=VRep(d, points=list(itertools.product((0, 1), repeat=d))))


def cube_vertices(d: int) -> list:
    return [tuple(v) for v in itertools.product((0, 1), repeat=d)]


def simplex(d: int) -> Polyhedron:
    if d < 1:
        raise ValueError("dimension must be positive")
    pts = [tuple(0 for _ in range(d))]
    pts += [tuple(int(i == j) for i in range(d)) for j in range(d)]
    return Polyhedron(vrep=VRep(d, points=pts))


def cross_polytope(d: int) -> Polyhedron:
    if d < 1:
        raise ValueError("dimension must be positive")
    pts = []
    for j in range(d):
        for s in (1, -1):
            pts.append(tuple(s * int(i == j) for i in range(d)))
    return Polyhedron(vrep=VRep(d, points=pts))


def permutahedron(point: Sequence) -> Polyhedron:
    """Convex hull of all coordinate permutations of ``point``."""
    p = vec(point)
    pts = sorted(set(itertools.permutations(p)))
    return Polyhedron(vrep=VRep(len(p), points=pts))


# ---------------------------------------------------------------------------
# random spherical polytopes

SPHERE_DENOMINATOR = 2**32


def _gauss_direction(d: int, rng: random.Random) -> list:
    while True:
        g = [rng.gauss(0.0, 1.0) for _ in range(d)]
        norm = math.sqrt(sum(x * x for x in g))
        if norm > 0:
            return [x / norm for x in g]


def exact_sphere_point(d: int, rng: random.Random) -> tuple:
    """A rational point with squared norm exactly one.

    A float direction is pushed to ``R^(d-1)`` by stereographic projection
    from the north pole, rounded to denominator ``2**32`` and pulled back
    with the (rational) inverse map ``y -> (2y, |y|^2 - 1) / (|y|^2 + 1)``.
    """
    if d < 2:
        raise ValueError("exact sphere sampling needs d >= 2")
    x = _gauss_direction(d, rng)
    denom = 1.0 - x[-1]
    if denom <= 0.0:  # the pole itself
        y = [Fraction(0)] * (d - 1)
    else:
        y = [Fraction(round(x[i] / denom * SPHERE_DENOMINATOR), SPHERE_DENOMINATOR)
             for i in range(d - 1)]
    s = sum(t * t for t in y)
    return tuple([2 * t / (s + 1) for t in y] + [(s - 1) / (s + 1)])


def rand_sphere_points(d: int, n: int, *, seed=None, mode: str = "exact") -> list:
    """``n`` points on (``exact``) or near (``float``) the unit sphere in ``R^d``.

    ``float`` mode rationalizes a normalized Gaussian vector bit-for-bit,
    so its points are only approximately of norm one.
    """
    rng = random.Random(seed)
    if mode == "exact":
        return [exact_sphere_point(d, rng) for _ in range(n)]
    if mode == "float":
        return [tuple(Fraction(x) for x in _gauss_direction(d, rng)) for _ in range(n)]
    raise ValueError(f"unknown sampling mode {mode!r}")


def rand_spherical_polytope(d: int, n: int, *, seed=None, mode: str = "exact") -> Polyhedron:
    if n < d + 1:
        raise ValueError(f"need at least d+1 = {d + 1} points, got {n}")
    return Polyhedron(vrep=VRep(d, points=rand_sphere_points(d, n, seed=seed, mode=mode)))


# ---------------------------------------------------------------------------
# Gelfand-Tsetlin polytopes


def check_partition(lam: Sequence[int]) -> tuple:
    lam = tuple(int(x) for x in lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"{lam} is not weakly decreasing")
    return lam


def check_permutation(sigma: Sequence[int]) -> tuple:
    sigma = tuple(int(x) for x in sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{len(sigma)}")
    return sigma


def gt_index(n: int, i: int, j: int) -> int:
    """Row-major coordinate of ``p_ij`` (1-based, ``i + j <= n + 1``)."""
    return sum(n - r for r in range(i - 1)) + (j - 1)


def gt_dimension(n: int) -> int:
    return n * (n + 1) // 2


def gt_rows(point: Sequence, n: int) -> list:
    """Split a flat diagram into its rows, top row first."""
    rows, k = [], 0
    for i in range(n):
        rows.append(tuple(point[k: k + n - i]))
        k += n - i
    return rows


def _gt_hrep(lam: tuple, equal_prefix: Sequence[int] = ()) -> HRep:
    n = len(lam)
    D = gt_dimension(n)

    def unit(*pairs):
        a = [0] * D
        for (i, j), s in pairs:
            a[gt_index(n, i, j)] += s
        return tuple(a)

    ineqs = []
    for i in range(1, n):
        for j in range(1, n - i + 1):
            # p_(i+1)j <= p_ij  and  p_i(j+1) <= p_(i+1)j
            ineqs.append((unit(((i + 1, j), 1), ((i, j), -1)), 0))
            ineqs.append((unit(((i, j + 1), 1), ((i + 1, j), -1)), 0))
    eqs = [(unit(((1, j), 1)), lam[j - 1]) for j in range(1, n + 1)]
    for j, c in enumerate(equal_prefix, start=1):
        for i in range(2, c + 2):
            eqs.append((unit(((i, j), 1), ((1, j), -1)), 0))
    return HRep(D, inequalities=ineqs, equations=eqs)


def gelfand_tsetlin(lam: Sequence[int]) -> Polyhedron:
    """All GT diagrams with top row ``lam``, in ``R^(n(n+1)/2)`` row-major."""
    return Polyhedron(hrep=_gt_hrep(check_partition(lam)))



def inverse_permutation(sigma: Sequence[int]) -> tuple:
    sigma = check_permutation(sigma)
    out = [0] * len(sigma)
    for i, x in enumerate(sigma, start=1):
        out[x - 1] = i
    return tuple(out)


def constraint_permutation(sigma: Sequence[int]) -> tuple:
    """The permutation whose code fixes the column equalities of GT(lam, sigma).

    This is the inverse of ``i -> n + 1 - sigma(i)``; equivalently ``sigma^-1``
    read backwards.  It sends 312-avoiding permutations to dominant ones
    (weakly decreasing code), where the lattice-point sum is a Demazure
    character.
    """
    sigma = check_permutation(sigma)
    n = len(sigma)
    return inverse_permutation(tuple(n + 1 - x for x in sigma))


def permutation_code(sigma: Sequence[int]) -> tuple:
    """``c_i = #{j > i : sigma_i > sigma_j}``."""
    sigma = check_permutation(sigma)
    n = len(sigma)
    return tuple(sum(1 for j in range(i + 1, n) if sigma[i] > sigma[j]) for i in range(n))


def generalized_gelfand_tsetlin(lam: Sequence[int], sigma: Sequence[int]) -> Polyhedron:
    """GT(lam) cut by: the first ``c_i + 1`` boxes of column ``i`` agree,
    where ``c`` is the code of :func:`constraint_permutation`."""
    lam = check_partition(lam)
    sigma = check_permutation(sigma)
    if len(lam) != len(sigma):
        raise ValueError("partition and permutation have different lengths")
    c = permutation_code(constraint_permutation(sigma))
    return Polyhedron(hrep=_gt_hrep(lam, c))


def gt_weight(diagram) -> tuple:
    """Row-sum increments read from the bottom row upwards.

    Accepts either a list of rows or a flat row-major vector.
    """
    rows = _as_rows(diagram)
    sums = [sum(r) for r in rows]
    n = len(rows)
    out = []
    below = 0
    for i in range(n - 1, -1, -1):
        out.append(sums[i] - below)
        below = sums[i]
    return tuple(int(x) for x in out)


def _as_rows(diagram) -> list:
    diagram = list(diagram)
    if diagram and isinstance(diagram[0], (list, tuple)):
        return [tuple(r) for r in diagram]
    total = len(diagram)
    n = int((math.isqrt(8 * total + 1) - 1) // 2)
    if gt_dimension(n) != total:
        raise ValueError(f"{total} is not a triangular number")
    return gt_rows(diagram, n)


def weyl_dimension(lam: Sequence[int], k: int = 1) -> int:
    """``prod_{i<j} (k lam_i - k lam_j + j - i) / (j - i)``."""
    lam = check_partition(lam)
    n = len(lam)
    acc = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            acc *= Fraction(k * lam[i] - k * lam[j] + j - i, j - i)
    assert acc.denominator == 1
    return int(acc)


def weyl_volume(lam: Sequence[int]) -> Fraction:
    lam = check_partition(lam)
    n = len(lam)
    acc = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            acc *= Fraction(lam[i] - lam[j], j - i)
    return acc


def avoids_312(sigma: Sequence[int]) -> bool:
    """No ``i < j < k`` with ``sigma_j < sigma_k < sigma_i``."""
    sigma = check_permutation(sigma)
    n = len(sigma)
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[j] >= sigma[i]:
                continue
            for k in range(j + 1, n):
                if sigma[j] < sigma[k] < sigma[i]:
                    return False
    return True


@dataclass(frozen=True)
class SparsePolynomial:
    """Multivariate polynomial as ``{exponent tuple: coefficient}``."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(int(e) for e in k): Fraction(v) for k, v in self.terms.items() if v != 0}
        object.__setattr__(self, "terms", clean)

    def __call__(self, *z):
        z = vec(z)
        total = Fraction(0)
        for exps, c in self.terms.items():
            m = c
            for zi, e in zip(z, exps):
                m *= zi**e
            total += m
        return total

    def __eq__(self, other):
        return isinstance(other, SparsePolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def monomials(self) -> list:
        """``(exponents, coefficient)`` pairs in lexicographic exponent order."""
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"z{i + 1}" if e == 1 else f"z{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def demazure_character(lam: Sequence[int], sigma: Sequence[int]) -> SparsePolynomial:
    """Sum of ``z^weight(P)`` over the lattice points of GT(lam, sigma).

    The sum is a Demazure character when ``sigma`` avoids 312; for other
    permutations it is still computed, with a warning.
    """
    if not avoids_312(sigma):
        warnings.warn(f"{tuple(sigma)} contains the pattern 312; the lattice-point sum "
                      "need not be a Demazure character", stacklevel=2)
    P = generalized_gelfand_tsetlin(lam, sigma)
    terms: dict = {}
    for pt in P.lattice_points():
        w = gt_weight(pt)
        terms[w] = terms.get(w, 0) + 1
    return SparsePolynomial(terms)


def _binom(a: int, b: int) -> int:
    """Binomial coefficient, zero for negative ``b``, polynomial in ``a``."""
    if b < 0:
        return 0
    num = 1
    for t in range(b):
        num *= a - t
    return num // math.factorial(b)


def demazure_matrix(lam: Sequence[int], sigma: Sequence[int]) -> list:
    """``( C(lam_i + n - c_i - i, n - c_i - j) )_ij`` with ``c`` as in GT(lam, sigma)."""
    lam = check_partition(lam)
    n = len(lam)
    if len(sigma) != n:
        raise ValueError("partition and permutation have different lengths")
    c = permutation_code(constraint_permutation(sigma))
    return [[_binom(lam[i - 1] + n - c[i - 1] - i, n - c[i - 1] - j) for j in range(1, n + 1)]
            for i in range(1, n + 1)]


def demazure_dimension(lam: Sequence[int], sigma: Sequence[int]) -> int:
    return int(determinant(demazure_matrix(lam, sigma)))


def partitions_in_box(n: int, top: int) -> list:
    """Weakly decreasing ``n``-tuples with entries in ``0..top``."""
    return [tuple(sorted(c, reverse=True))
            for c in itertools.combinations_with_replacement(range(top + 1), n)]
