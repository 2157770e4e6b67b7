"""Exact dense linear algebra over Q(i).

Matrices are lists of rows of :class:`GaussianRational`.  Elimination pivots
on the first nonzero entry from the top of each column, so that results are a
deterministic function of the input ordering.
"""

from __future__ import annotations

from typing import Sequence

from .scalars import ONE, ZERO, GaussianRational

Matrix = list[list[GaussianRational]]
Vector = list[GaussianRational]


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def transpose(m: Matrix, ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def conj_transpose(m: Matrix, ncols: int | None = None) -> Matrix:
    return [[x.conjugate() for x in row] for row in transpose(m, ncols)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def matvec(a: Matrix, v: Vector) -> Vector:
    return [_dot(row, v) for row in a]


def _dot(x: Sequence[GaussianRational], y: Sequence[GaussianRational]) -> GaussianRational:
    acc = ZERO
    for a, b in zip(x, y):
        if a and b:
            acc = acc + a * b
    return acc


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (Gauss-Jordan, exact)."""
    r = [list(row) for row in m]
    if not r:
        return r, []
    nrows, ncols = len(r), len(r[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        piv = next((i for i in range(row, nrows) if r[i][col]), None)
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = r[row][col].inverse()
        r[row] = [x * inv for x in r[row]]
        for i in range(nrows):
            if i != row and r[i][col]:
                f = r[i][col]
                r[i] = [x - f * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1]) if m and m[0] else 0


def nullspace(m: Matrix, ncols: int) -> list[Vector]:
    """Basis of {x : m x = 0}; one vector per free column, in column order."""
    if not m:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][free]
        basis.append(v)
    return basis


def row_basis(vectors: Sequence[Vector]) -> list[Vector]:
    """A basis (nonzero rows of the rref) for the span of ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    r, pivots = rref(vectors)
    return r[: len(pivots)]


def span_rank(vectors: Sequence[Vector]) -> int:
    return len(row_basis(vectors)) if vectors else 0


def contains(space: Sequence[Vector], vectors: Sequence[Vector]) -> bool:
    """Whether every vector lies in the span of ``space``."""
    if not vectors:
        return True
    return span_rank(list(space) + list(vectors)) == span_rank(space)


def solve(m: Matrix, b: Vector) -> Vector | None:
    """One solution of ``m x = b`` (free variables set to 0), or None."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    aug = [list(m[i]) + [b[i]] for i in range(nrows)]
    if not aug:
        return []
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][ncols]
    return x


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(m[i]) + identity(n)[i] for i in range(n)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def det(m: Matrix) -> GaussianRational:
    """Determinant by Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return ONE
    a = [list(row) for row in m]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return a[n - 1][n - 1] * sign
