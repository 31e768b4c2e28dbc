"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator), vectors are tuples and matrices are lists of row lists.
Nothing in here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = list  # list[list[Fraction]]


def to_scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are accepted and converted exactly (their binary value), which
    is what "rationalizing" a float means here.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, float, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def vec(xs: Iterable) -> tuple:
    return tuple(to_scalar(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> list:
    return [list(vec(r)) for r in rows]


def format_scalar(x: Fraction) -> str:
    return str(x)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def mat_vec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(dot(row, x) for row in A)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    cols = list(zip(*B))
    return [[dot(row, c) for c in cols] for row in A]


def transpose(A: Sequence[Sequence]) -> list:
    return [list(c) for c in zip(*A)]


def identity(n: int) -> list:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def rref(M: Sequence[Sequence]):
    """Reduced row echelon form.

    Returns ``(R, pivots, rank)`` where ``R`` has the same shape as ``M``
    (zero rows at the bottom) and ``pivots`` lists the pivot column of
    each nonzero row.
    """
    R = [list(vec(r)) for r in M]
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        if piv != 1:
            R[r] = [x / piv for x in R[r]]
        row = R[r]
        for i in range(nrows):
            if i != r:
                f = R[i][c]
                if f:
                    R[i] = [x - f * y for x, y in zip(R[i], row)]
        pivots.append(c)
        r += 1
    return R, pivots, len(pivots)


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return _int_rank([r if all(type(x) is int for x in r) else _integral_row(r) for r in M])


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of ``{x : M x = 0}``, one vector per free column."""
    if not M:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    R, pivots, rk = rref(M)
    n = len(R[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i][f]
        basis.append(tuple(x))
    return basis


def solve_affine(A: Sequence[Sequence], b: Sequence):
    """Solve ``A x = b`` exactly.

    Returns ``None`` when the system is inconsistent, otherwise a pair
    ``(x, basis)`` of a particular solution and a nullspace basis of ``A``.
    """
    if len(A) != len(b):
        raise ValueError(f"A has {len(A)} rows but b has {len(b)} entries")
    if not A:
        raise ValueError("empty system has no column count")
    n = len(A[0])
    R, pivots, rk = rref([list(row) + [bi] for row, bi in zip(A, b)])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = R[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        y = [Fraction(0)] * n
        y[f] = Fraction(1)
        for i, p in enumerate(pivots):
            y[p] = -R[i][f]
        basis.append(tuple(y))
    return tuple(x), basis


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integral_row(row: Sequence):
    """Scale a rational row to integers; returns the list of ints."""
    row = vec(row)
    den = 1
    for x in row:
        den = _lcm(den, x.denominator)
    return [int(x * den) for x in row]


def _int_rank(rows: list) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    A = [list(r) for r in rows]
    if not A:
        return 0
    nrows, ncols = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, nrows):
            f = A[i][c]
            A[i] = [(piv * x - f * y) // prev for x, y in zip(A[i], A[r])]
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def determinant(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant via Bareiss fraction-free elimination.

    Rows are scaled to integers first, so intermediate entries stay
    integral and bounded by minors of the scaled matrix.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    A = []
    for r in M:
        r = vec(r)
        den = 1
        for x in r:
            den = _lcm(den, x.denominator)
        scale *= den
        A.append([int(x * den) for x in r])
    return Fraction(int_determinant(A), 1) / scale


def int_determinant(A: Sequence[Sequence[int]]) -> int:
    A = [list(r) for r in A]
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            aik = A[i][k]
            rowi = A[i]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def primitive(v: Sequence) -> tuple:
    """Positive rescaling of a rational vector to a coprime integer vector."""
    ints = _integral_row(v)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(x // g for x in ints)


def integer_kernel(M: Sequence[Sequence]) -> list:
    """Lattice basis of ``{x in Z^n : M x = 0}``.

    Unimodular column operations bring ``M`` to column echelon form
    ``M U = [H | 0]``; the columns of ``U`` under the zero block form a
    basis of the saturated kernel lattice.
    """
    rows = [_integral_row(r) for r in M]
    if not rows:
        raise ValueError("need at least one row to know the column count")
    n = len(rows[0])
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for X in (A, U):
            for row in X:
                x, y = row[i], row[j]
                row[i] = a * x + b * y
                row[j] = c * x + d * y

    pc = 0
    for r in range(len(A)):
        if pc == n:
            break
        for j in range(pc + 1, n):
            y = A[r][j]
            if y == 0:
                continue
            x = A[r][pc]
            g, s, t = _xgcd(x, y)
            # [s, -y/g; t, x/g] has determinant 1
            colop(pc, j, s, t, -y // g, x // g)
        if A[r][pc] != 0:
            pc += 1
    return [tuple(U[i][c] for i in range(n)) for c in range(pc, n)]


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class UnivariatePolynomial:
    """Dense univariate polynomial, coefficients lowest degree first."""

    coefficients: tuple

    def __post_init__(self):
        cs = list(vec(self.coefficients))
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        x = to_scalar(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("k" if k == 1 else f"k^{k}")
            if mono and c == 1:
                body = mono
            elif mono and c == -1:
                body = "-" + mono
            else:
                body = f"{c}*{mono}" if mono else str(c)
            terms.append(body)
        return " + ".join(terms).replace("+ -", "- ")


def lagrange_interpolate(samples: Iterable) -> UnivariatePolynomial:
    """The unique polynomial of degree < len(samples) through the samples.

    Newton divided differences, expanded into monomial coefficients.
    """
    pts = [(to_scalar(x), to_scalar(y)) for x, y in samples]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("sample abscissae must be pairwise distinct")
    n = len(pts)
    coef = [y for _, y in pts]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Horner-style expansion of the Newton form
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly <- poly * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[i] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[i]
    return UnivariatePolynomial(tuple(poly))
