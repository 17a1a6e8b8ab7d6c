"""Small exact linear algebra over the integers and the rationals.

Matrices are lists of rows.  Nothing here is fast; it only needs to be exact
for the handful of 4x4 lattice matrices and the few-hundred-column Laplacian
systems the library builds.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .errors import ShapeError

Matrix = list[list]


def shape(a: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ShapeError("ragged matrix")
    return rows, cols


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def det_int(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss) elimination."""
    n, m = shape(a)
    if n != m:
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m_ = [list(map(int, r)) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m_[k][k] == 0:
            for i in range(k + 1, n):
                if m_[i][k] != 0:
                    m_[k], m_[i] = m_[i], m_[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m_[i][j] = (m_[i][j] * m_[k][k] - m_[i][k] * m_[k][j]) // prev
        prev = m_[k][k]
    return sign * m_[n - 1][n - 1]


def det(a: Sequence[Sequence]) -> Fraction:
    """Determinant over the rationals."""
    n, m = shape(a)
    if n != m:
        raise ShapeError("determinant of a non-square matrix")
    m_ = [[Fraction(x) for x in r] for r in a]
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m_[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m_[k], m_[piv] = m_[piv], m_[k]
            d = -d
        d *= m_[k][k]
        for i in range(k + 1, n):
            f = m_[i][k] / m_[k][k]
            if f:
                for j in range(k, n):
                    m_[i][j] -= f * m_[k][j]
    return d


def rref(a: Sequence[Sequence], zero=0) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Entries may be any exact field elements (Fraction by default); ints are
    promoted to Fraction.
    """
    rows, cols = shape(a)
    m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in a]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != zero), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column (canonical RREF basis)."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    m, pivots = rref(a)
    cols = len(m[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -m[row][f]
        basis.append(v)
    return basis


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of a nonsingular square system over the rationals."""
    n, m = shape(a)
    if n != m or len(b) != n:
        raise ShapeError("solve expects a square system")
    aug = [list(r) + [b[i]] for i, r in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ShapeError("singular system")
    return [red[i][n] for i in range(n)]


def minors_gcd(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of all maximal minors of the matrix whose columns are ``vectors``.

    The columns span a primitive sublattice of Z^n iff this is 1; it is 0 iff
    they are linearly dependent.
    """
    k = len(vectors)
    n = len(vectors[0])
    g = 0
    for rows in combinations(range(n), k):
        sub = [[vectors[c][r] for c in range(k)] for r in rows]
        g = gcd(g, det_int(sub))
        if g == 1:
            return 1
    return g
