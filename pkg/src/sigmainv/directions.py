"""Direction vectors parametrizing conformal classes of flat product tori."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Optional, Sequence

from .closedform import ClosedFormValue
from .errors import DegenerateError


@dataclass(frozen=True)
class DirectionVector:
    """Direction ``r = v / |v|`` with every coordinate nonzero.

    Only the squared entries ``squares`` enter any torus invariant, so a
    direction with irrational coordinates (say ``sqrt(3)/2``) is stored through
    its rational squares.  ``entries`` holds the primitive, sign-normalized
    integer vector when there is one.
    """

    squares: tuple[Fraction, ...]
    entries: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if len(self.squares) < 1:
            raise DegenerateError("empty direction")
        if any(s <= 0 for s in self.squares):
            raise DegenerateError("direction entries must all be nonzero")

    @classmethod
    def from_integers(cls, v: Sequence[int]) -> "DirectionVector":
        v = [int(x) for x in v]
        if any(x == 0 for x in v):
            raise DegenerateError(f"direction {tuple(v)} has a zero entry")
        g = reduce(gcd, v)
        v = [x // g for x in v]
        if v[0] < 0:
            v = [-x for x in v]
        return cls(tuple(Fraction(x * x) for x in v), tuple(v))

    @classmethod
    def from_squares(cls, squares: Sequence) -> "DirectionVector":
        return cls(tuple(Fraction(s) for s in squares))

    @property
    def n(self) -> int:
        return len(self.squares)

    @property
    def sq_len(self) -> Fraction:
        return sum(self.squares, Fraction(0))

    def normalized_squares(self) -> tuple[Fraction, ...]:
        """The rational numbers r_i^2, summing to 1."""
        t = self.sq_len
        return tuple(s / t for s in self.squares)

    def inverse_square_sum(self) -> Fraction:
        """sum_i 1 / r_i^2 for the unit direction."""
        t = self.sq_len
        return t * sum((1 / s for s in self.squares), Fraction(0))

    def coordinate_product(self) -> ClosedFormValue:
        """prod_i |r_i| for the unit direction, as an exact value."""
        if self.entries is not None:
            # factor the small integers rather than their large product
            out = ClosedFormValue.from_rational(self.sq_len) ** Fraction(-self.n, 2)
            for v in self.entries:
                out = out * ClosedFormValue.from_rational(abs(v))
            return out
        sq = prod(self.normalized_squares(), start=Fraction(1))
        return ClosedFormValue.from_rational(sq) ** Fraction(1, 2)

    def sorted_squares(self) -> tuple[Fraction, ...]:
        """Squares of the unit direction up to permutation, for isometry comparisons."""
        return tuple(sorted(self.normalized_squares()))
