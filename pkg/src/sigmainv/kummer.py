"""Kummer surfaces of complex 2-tori: singular points, Kahler class scale, volume.

A lattice ``Lambda`` in ``C^2 = R^4`` is given by four real generators,
ordered as ``(Re z1, Im z1, Re z2, Im z2)``.  The flat class of the torus has
self-intersection ``8 pi^4 det``; the sixteen exceptional curves lower it by
``s^2 sum a_i^2``, and ``s_Lambda`` is the scale that puts the volume at
``2 pi^2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Sequence

import mpmath

from . import linalg
from .closedform import PI, ClosedFormSum, ClosedFormValue
from .errors import ClassNotInConeError, DegenerateError, DomainError, ShapeError
from .invariants import ExtrinsicData, gauss_scalar, wd_from_extrinsic


def _num(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    return x


@dataclass(frozen=True)
class KummerLattice:
    generators: tuple[tuple[Fraction, ...], ...]
    weights: tuple = field(default=(Fraction(1),) * 16)

    def __post_init__(self):
        if len(self.generators) != 4 or any(len(g) != 4 for g in self.generators):
            raise ShapeError("need four generators in R^4")
        if len(self.weights) != 16:
            raise ShapeError("need sixteen weights, one per exceptional curve")
        if any(w <= 0 for w in self.weights):
            raise DomainError("weights must be positive")
        if self.det_gamma == 0:
            raise DegenerateError("generators are linearly dependent")

    @classmethod
    def of(cls, generators: Sequence[Sequence], weights: Sequence | None = None) -> "KummerLattice":
        gens = tuple(tuple(Fraction(x) for x in g) for g in generators)
        ws = tuple(_num(w) for w in weights) if weights is not None else (Fraction(1),) * 16
        return cls(gens, ws)

    @classmethod
    def square(cls, weights: Sequence | None = None) -> "KummerLattice":
        """Generators (1, 0), (i, 0), (0, 1), (0, i)."""
        return cls.of([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], weights)

    @classmethod
    def with_det(cls, det, weights: Sequence | None = None) -> "KummerLattice":
        """A rectangular lattice of the given determinant (first generator stretched)."""
        det = Fraction(det)
        if det <= 0:
            raise DomainError("determinant must be positive")
        return cls.of([[det, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], weights)

    @property
    def det_gamma(self) -> Fraction:
        """Determinant of the real 4x4 matrix whose columns are the generators."""
        return linalg.det(linalg.transpose(self.generators))

    @property
    def covolume(self) -> Fraction:
        return abs(self.det_gamma)

    @property
    def weight_norm_sq(self):
        return sum(w * w for w in self.weights)


@dataclass(frozen=True)
class SingularPoint:
    label: tuple[int, int, int, int]
    point: tuple[Fraction, ...]          # ambient coordinates of (1/2) sum l_i gamma_i
    lattice_coords: tuple[Fraction, ...]  # the same point in the generator basis, reduced mod 1


def singular_points(L: KummerLattice) -> list[SingularPoint]:
    """The sixteen 2-torsion points ``(1/2) sum l_i gamma_i``, l in F_2^4."""
    basis = linalg.transpose(L.generators)
    out = []
    for l in product((0, 1), repeat=4):
        pt = tuple(sum((Fraction(li, 2) * g[k] for li, g in zip(l, L.generators)), Fraction(0))
                   for k in range(4))
        coords = tuple(c - (c.numerator // c.denominator) for c in linalg.solve(basis, list(pt)))
        out.append(SingularPoint(l, pt, coords))
    return out


def distinct_classes(L: KummerLattice, points: Sequence[SingularPoint] | None = None) -> int:
    """Number of pairwise distinct classes mod Lambda, by exact membership of differences."""
    pts = points if points is not None else singular_points(L)
    basis = linalg.transpose(L.generators)
    reps: list[SingularPoint] = []
    for p in pts:
        same = False
        for r in reps:
            diff = [a - b for a, b in zip(p.point, r.point)]
            if all(c.denominator == 1 for c in linalg.solve(basis, diff)):
                same = True
                break
        if not same:
            reps.append(p)
    return len(reps)


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (ClosedFormValue, ClosedFormSum)):
        return x.evaluate(30)
    return mpmath.mpf(x)


def s_lambda(L: KummerLattice, dps: int = 30) -> mpmath.mpf:
    """``sqrt((8 pi^4 det - 2 pi^2) / sum a_i^2)``."""
    with mpmath.workdps(dps + 5):
        det = _to_mpf(L.covolume)
        top = 8 * mpmath.pi**4 * det - 2 * mpmath.pi**2
        if top <= 0:
            raise ClassNotInConeError("8 pi^4 det must exceed 2 pi^2")
        return +mpmath.sqrt(top / _to_mpf(L.weight_norm_sq))


def kummer_volume(L: KummerLattice, s):
    """``2 pi^2 + 8 pi^4 (1 - s^2) det``; exact when s is rational."""
    s = _num(s)
    if not 0 < s <= 1:
        raise DomainError("s must lie in (0, 1]")
    if isinstance(s, Fraction):
        return ClosedFormSum.of([2 * PI**2, 8 * (1 - s * s) * L.covolume * PI**4]).collapse()
    with mpmath.workdps(30):
        return 2 * mpmath.pi**2 + 8 * mpmath.pi**4 * (1 - mpmath.mpf(s) ** 2) * _to_mpf(L.covolume)


@dataclass
class SquareKummerReport:
    W: ClosedFormValue
    D: ClosedFormValue
    volume: object
    scalar: object
    expected: ClosedFormValue
    samples: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.W == self.expected and self.D == self.expected and self.scalar == 0
                and self.volume == 2 * PI**2 and all(s["holds"] for s in self.samples))


def random_lattice(rng: random.Random, size: int = 5) -> KummerLattice:
    while True:
        gens = [[Fraction(rng.randint(-size, size), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
        try:
            return KummerLattice.of(gens)
        except DegenerateError:
            continue


def square_kummer_check(samples: int = 8, seed: int = 0) -> SquareKummerReport:
    """W and D of the square Kummer surface, plus the volume-comparison inequality.

    The square surface at s = 1 has volume ``2 pi^2`` and embedding data
    ``|H|^2 = 0``, ``|alpha|^2 = 12``.  For the sampled lattices with
    determinant at least 1 and sampled s, ``W = 16 mu`` is compared against
    the square value.
    """
    sq = KummerLattice.square()
    vol = kummer_volume(sq, 1)
    data = ExtrinsicData(4, Fraction(0), Fraction(12), vol)
    wd = wd_from_extrinsic(data)
    expected = 32 * PI**2
    rng = random.Random(seed)
    rows = []
    for _ in range(samples):
        det = Fraction(rng.randint(1, 12), rng.randint(1, 3))
        if det < 1:
            det = 1 / det
        s = Fraction(rng.randint(1, 10), 10)
        L = KummerLattice.with_det(det)
        W = wd_from_extrinsic(ExtrinsicData(4, Fraction(0), Fraction(12), kummer_volume(L, s))).W
        rows.append({"det": str(det), "s": str(s), "W": W.render(),
                     "holds": float(W) >= float(expected)})
    return SquareKummerReport(wd.W, wd.D, vol, gauss_scalar(4, 0, 12), expected, rows)
