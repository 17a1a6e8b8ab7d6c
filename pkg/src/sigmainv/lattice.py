"""Exact integer lattices: volume, successive shortest bases and theta series.

A lattice is given by an integer basis whose *columns* are the generators.
All arithmetic is over the integers or the rationals; enumeration bounds use an
exact rational Fincke-Pohst decomposition of the Gram matrix, with an exact LLL
pass in front purely to shrink the search tree.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from . import linalg
from .directions import DirectionVector
from .errors import (DegenerateError, EnumerationBudgetError, InvalidLatticeError,
                     ShapeError, UnsupportedRankError)

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class IntegerLattice:
    """Full-rank lattice spanned by the columns of an integer matrix."""

    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.columns)
        if not 1 <= n <= 8:
            raise UnsupportedRankError(f"rank {n} outside 1..8")
        if any(len(c) != n for c in self.columns):
            raise InvalidLatticeError("basis must be square")
        if linalg.det_int(self.matrix()) == 0:
            raise InvalidLatticeError("basis is singular")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntegerLattice":
        return cls(tuple(tuple(int(x) for x in c) for c in columns))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerLattice":
        """Build from a matrix written row by row (generators are its columns)."""
        return cls.from_columns(linalg.transpose(rows))

    @classmethod
    def from_json(cls, text: str) -> "IntegerLattice":
        doc = json.loads(text)
        cols = doc["basis_columns"]
        if "rank" in doc and doc["rank"] != len(cols):
            raise InvalidLatticeError("rank does not match the number of columns")
        return cls.from_columns(cols)

    def to_json(self) -> str:
        return json.dumps({"rank": self.rank, "basis_columns": [list(c) for c in self.columns]})

    @property
    def rank(self) -> int:
        return len(self.columns)

    def matrix(self) -> list[list[int]]:
        """Basis as a row-major matrix whose columns are the generators."""
        return linalg.transpose(self.columns)

    def gram(self) -> list[list[int]]:
        return [[sum(a * b for a, b in zip(u, v)) for v in self.columns] for u in self.columns]

    def vector(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(c * col[i] for c, col in zip(coeffs, self.columns)) for i in range(self.rank))

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Rational coordinates of an ambient vector in this basis."""
        return linalg.solve(self.matrix(), [Fraction(x) for x in v])

    def contains(self, v: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(v))


def lattice_volume(L: IntegerLattice) -> tuple[int, int]:
    """Covolume ``|det B|`` and orientation sign of the basis."""
    d = linalg.det_int(L.matrix())
    if d == 0:
        raise InvalidLatticeError("singular basis")
    return abs(d), (1 if d > 0 else -1)


def basis_change_verify(B, C, S) -> bool:
    """True iff ``B @ C == S`` exactly and C is unimodular."""
    for m in (B, C, S):
        r, c = linalg.shape(m)
        if r != c:
            raise ShapeError("basis matrices must be square")
    if not (len(B) == len(C) == len(S)):
        raise ShapeError("matrices differ in size")
    return linalg.matmul(B, C) == [list(r) for r in S] and abs(linalg.det_int(C)) == 1


# -- reduction and enumeration ----------------------------------------------

def lll_reduce(columns: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)):
    """Exact LLL reduction.

    Returns ``(reduced_columns, U)`` with ``reduced = B @ U`` column-wise and U
    unimodular (as a list of coefficient columns).
    """
    b = [list(c) for c in columns]
    n = len(b)
    u = [[int(i == j) for i in range(n)] for j in range(n)]

    def dot(x, y):
        return sum(p * q for p, q in zip(x, y))

    def gso():
        bstar: list[list[Fraction]] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms: list[Fraction] = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / norms[j]
                v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(dot(v, v))
        return mu, norms

    mu, norms = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                u[k] = [x - q * y for x, y in zip(u[k], u[j])]
                mu, norms = gso()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            u[k], u[k - 1] = u[k - 1], u[k]
            mu, norms = gso()
            k = max(k - 1, 1)
    return [tuple(c) for c in b], [tuple(c) for c in u]


def _fincke_pohst(gram: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(gram)
    q = [[Fraction(x) for x in r] for r in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise InvalidLatticeError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _int_window(c: Fraction, t: Fraction) -> tuple[int, int]:
    """Integers y with (y - c)^2 <= t, as an inclusive range."""
    s = math.isqrt(math.floor(t))
    lo = math.floor(c) - s - 1
    hi = math.ceil(c) + s + 1
    while lo <= hi and (lo - c) ** 2 > t:
        lo += 1
    while hi >= lo and (hi - c) ** 2 > t:
        hi -= 1
    return lo, hi


def enumerate_short(gram: Sequence[Sequence[int]], bound: int,
                    budget: int = DEFAULT_BUDGET) -> Iterator[tuple[tuple[int, ...], int]]:
    """All coefficient vectors x with ``x^T G x <= bound`` and their norms.

    The zero vector is included.  Raises EnumerationBudgetError once more than
    ``budget`` vectors have been produced.
    """
    q = _fincke_pohst(gram)
    n = len(q)
    x = [0] * n
    count = 0
    bound_f = Fraction(bound)

    def rec(i: int, remaining: Fraction):
        nonlocal count
        c = -sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        lo, hi = _int_window(c, remaining / q[i][i])
        for xi in range(lo, hi + 1):
            x[i] = xi
            r = remaining - q[i][i] * (xi - c) ** 2
            if i == 0:
                count += 1
                if count > budget:
                    raise EnumerationBudgetError(f"more than {budget} lattice vectors below {bound}")
                norm = bound_f - r
                yield tuple(x), int(norm)
            else:
                yield from rec(i - 1, r)
        x[i] = 0

    if n:
        yield from rec(n - 1, bound_f)


def short_vectors(L: IntegerLattice, bound: int, budget: int = DEFAULT_BUDGET,
                  reduce_first: bool = True) -> list[tuple[tuple[int, ...], int]]:
    """Coefficient vectors (in L's own basis) of norm at most ``bound``."""
    if reduce_first:
        red, U = lll_reduce(L.columns)
        gram = IntegerLattice.from_columns(red).gram()
        out = []
        for y, norm in enumerate_short(gram, bound, budget):
            xcoef = tuple(sum(U[k][i] * y[k] for k in range(len(y))) for i in range(len(y)))
            out.append((xcoef, norm))
        return out
    return list(enumerate_short(L.gram(), bound, budget))


def theta_series(L: IntegerLattice, bound: int, budget: int = DEFAULT_BUDGET) -> dict[int, int]:
    """Number of lattice vectors of each squared norm up to ``bound``.

    Only norms that occur are keys; the zero vector gives ``{0: 1}``.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    counts: dict[int, int] = {}
    for _, norm in short_vectors(L, bound, budget):
        counts[norm] = counts.get(norm, 0) + 1
    return dict(sorted(counts.items()))


# -- successive shortest basis ----------------------------------------------

@dataclass(frozen=True)
class ShortestBasis:
    """Greedy basis of shortest vectors, with coefficients in the input basis."""

    columns: tuple[tuple[int, ...], ...]
    coefficients: tuple[tuple[int, ...], ...]
    squared_norms: tuple[int, ...]

    def matrix(self) -> list[list[int]]:
        return linalg.transpose(self.columns)

    def change_of_basis(self) -> list[list[int]]:
        """Matrix C with ``B @ C == S``."""
        return linalg.transpose(self.coefficients)


def _sign_normalized(x: tuple[int, ...]) -> tuple[int, ...]:
    for c in x:
        if c:
            return x if c > 0 else tuple(-v for v in x)
    return x


def shortest_basis(L: IntegerLattice, budget: int = DEFAULT_BUDGET) -> ShortestBasis:
    """Successive-minima style basis built greedily.

    At each step the shortest lattice vector that extends the chosen set to a
    primitive sublattice is taken.  Ties go to the lexicographically smallest
    coefficient vector (coefficients in L's basis, first nonzero entry
    positive), so the output does not depend on the LLL pre-pass.
    """
    n = L.rank
    if n > 6:
        raise UnsupportedRankError("shortest_basis supports rank <= 6")
    red, _ = lll_reduce(L.columns)
    bound = max(sum(x * x for x in c) for c in red)
    while True:
        cands = {}
        for x, norm in short_vectors(L, bound, budget):
            if norm == 0:
                continue
            key = _sign_normalized(x)
            cands[key] = norm
        ordered = sorted(cands.items(), key=lambda kv: (kv[1], kv[0]))
        chosen: list[tuple[int, ...]] = []
        norms: list[int] = []
        for x, norm in ordered:
            if linalg.minors_gcd(chosen + [x]) == 1:
                chosen.append(x)
                norms.append(norm)
                if len(chosen) == n:
                    break
        if len(chosen) == n:
            break
        bound *= 2
    cols = tuple(L.vector(x) for x in chosen)
    return ShortestBasis(cols, tuple(chosen), tuple(norms))


# -- conformal direction -----------------------------------------------------

@dataclass(frozen=True)
class ConformalDirection:
    """Sum of the shortest generators and the direction it defines."""

    vector: tuple[int, ...]
    sq_len: int
    direction: Optional[DirectionVector]


def conformal_direction(S) -> ConformalDirection:
    """Conformal-class direction ``sum_i gamma_i`` of a shortest basis.

    Accepts a ShortestBasis or a sequence of generator columns.  The raw sum is
    kept as ``vector``; ``direction`` is its primitive, sign-normalized form.
    """
    cols = S.columns if isinstance(S, ShortestBasis) else [tuple(c) for c in S]
    v = tuple(sum(c[i] for c in cols) for i in range(len(cols[0])))
    if not any(v):
        raise DegenerateError("generators sum to zero")
    direction = DirectionVector.from_integers(v) if all(v) else None
    return ConformalDirection(v, sum(x * x for x in v), direction)
