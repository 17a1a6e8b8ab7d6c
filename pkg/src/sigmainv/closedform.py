"""Exact closed-form values and the complete elliptic integral of the second kind.

Every invariant the library produces is a signed monomial

    sign * prod(p ** e_p) * pi ** a * E ** m

with rational exponents ``e_p`` over primes ``p``, a rational power of pi and
an integer power of ``E = E(2*sqrt(2)/3)``.  Keeping the exponent map in
canonical form (one entry per prime, zero exponents dropped) makes equality a
structural comparison, so table entries can be matched bit-exactly.

The familiar square-root form ``coeff * sqrt(radicand) * pi^k * E^m`` is the
special case where every prime exponent has fractional part 0 or 1/2; the
``coeff`` and ``radicand`` properties expose it.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import mpmath

from .errors import DomainError

Rational = Fraction

Number = Union[int, Fraction]

_CMP_DPS = 40


@lru_cache(maxsize=8192)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of a positive integer as ``((p, k), ...)``."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out = []
    for p in (2, 3, 5, 7, 11, 13):
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out.append((p, k))
    if n > 1:
        from sympy import factorint
        out.extend(sorted(factorint(n).items()))
    return tuple(out)


def _frac(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _floor_frac(e: Fraction) -> tuple[int, Fraction]:
    fl = math.floor(e)
    return fl, e - fl


class ClosedFormValue:
    """Immutable exact value ``sign * prod p^e_p * pi^pi_exp * E^ell_exp``."""

    __slots__ = ("sign", "factors", "pi_exp", "ell_exp")

    def __init__(self, sign: int = 1, factors: Iterable[tuple[int, Fraction]] = (),
                 pi_exp: Number = 0, ell_exp: int = 0):
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if ell_exp != int(ell_exp) or ell_exp < 0:
            raise DomainError("ell_exp must be a non-negative integer")
        if sign == 0:
            fs: tuple = ()
            pi_exp, ell_exp = Fraction(0), 0
        else:
            acc: dict[int, Fraction] = {}
            for p, e in factors:
                acc[p] = acc[p] + e if p in acc else e
            fs = tuple(sorted((p, e if type(e) is Fraction else Fraction(e))
                              for p, e in acc.items() if e))
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "factors", fs)
        object.__setattr__(self, "pi_exp", pi_exp if type(pi_exp) is Fraction else Fraction(pi_exp))
        object.__setattr__(self, "ell_exp", int(ell_exp))

    def __setattr__(self, name, value):
        raise AttributeError("ClosedFormValue is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rational(cls, q: Number) -> "ClosedFormValue":
        q = _frac(q)
        if q == 0:
            return cls(0)
        fs = [(p, Fraction(k)) for p, k in factorize(abs(q.numerator))]
        if q.denominator != 1:
            fs += [(p, Fraction(-k)) for p, k in factorize(q.denominator)]
        return cls(1 if q > 0 else -1, fs)

    @classmethod
    def coerce(cls, x) -> "ClosedFormValue":
        if isinstance(x, ClosedFormValue):
            return x
        return cls.from_rational(x)

    # -- decomposition ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def is_rational(self) -> bool:
        return (self.pi_exp == 0 and self.ell_exp == 0
                and all(e.denominator == 1 for _, e in self.factors))

    def rational_part(self) -> Fraction:
        """Signed product of the integer parts of the prime exponents."""
        if self.sign == 0:
            return Fraction(0)
        r = Fraction(self.sign)
        for p, e in self.factors:
            fl, _ = _floor_frac(e)
            r *= Fraction(p) ** fl
        return r

    def shape(self) -> tuple:
        """Key identifying like terms: fractional prime exponents, pi and E powers."""
        fr = tuple((p, _floor_frac(e)[1]) for p, e in self.factors if e.denominator != 1)
        return (self.pi_exp, self.ell_exp, fr)

    def unit(self) -> "ClosedFormValue":
        """The positive monomial of this value's shape (rational part 1)."""
        pi_exp, ell_exp, fr = self.shape()
        return ClosedFormValue(1, fr, pi_exp, ell_exp)

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self.render()} is not rational")
        return self.rational_part()

    @property
    def coeff(self) -> Fraction:
        self._check_sqrt_form()
        return self.rational_part()

    @property
    def radicand(self) -> int:
        self._check_sqrt_form()
        r = 1
        for p, e in self.factors:
            if e.denominator == 2:
                r *= p
        return r

    def _check_sqrt_form(self):
        for _, e in self.factors:
            if e.denominator not in (1, 2):
                raise DomainError(f"{self.render()} is not a square-root form")
        if self.pi_exp.denominator != 1:
            raise DomainError(f"{self.render()} has a fractional power of pi")

    # -- arithmetic -------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, ClosedFormSum):
            return other * self
        try:
            o = ClosedFormValue.coerce(other)
        except TypeError:
            return NotImplemented
        if self.sign == 0 or o.sign == 0:
            return ClosedFormValue(0)
        return ClosedFormValue(self.sign * o.sign, self.factors + o.factors,
                               self.pi_exp + o.pi_exp, self.ell_exp + o.ell_exp)

    __rmul__ = __mul__

    def inverse(self) -> "ClosedFormValue":
        if self.sign == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.ell_exp:
            raise DomainError("negative powers of E are not represented")
        return ClosedFormValue(self.sign, tuple((p, -e) for p, e in self.factors), -self.pi_exp, 0)

    def __truediv__(self, other):
        try:
            o = ClosedFormValue.coerce(other)
        except TypeError:
            return NotImplemented
        if o.ell_exp and o.ell_exp <= self.ell_exp:
            trimmed = ClosedFormValue(o.sign, o.factors, o.pi_exp, 0)
            head = ClosedFormValue(self.sign, self.factors, self.pi_exp, self.ell_exp - o.ell_exp)
            return head * trimmed.inverse()
        return self * o.inverse()

    def __rtruediv__(self, other):
        return ClosedFormValue.coerce(other) / self

    def __pow__(self, exponent):
        e = _frac(exponent)
        if self.sign == 0:
            if e <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return self
        if e.denominator != 1 and self.sign < 0:
            raise DomainError("fractional power of a negative value")
        if self.ell_exp and (self.ell_exp * e).denominator != 1:
            raise DomainError("power leaves a fractional exponent of E")
        if self.ell_exp * e < 0:
            raise DomainError("negative powers of E are not represented")
        sign = self.sign if (e.denominator != 1 or e.numerator % 2) else 1
        return ClosedFormValue(sign, tuple((p, x * e) for p, x in self.factors),
                               self.pi_exp * e, int(self.ell_exp * e))

    def __neg__(self):
        return ClosedFormValue(-self.sign, self.factors, self.pi_exp, self.ell_exp)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.sign >= 0 else -self

    def __add__(self, other):
        if isinstance(other, ClosedFormSum):
            return other + self
        try:
            o = ClosedFormValue.coerce(other)
        except TypeError:
            return NotImplemented
        return ClosedFormSum.of([self, o]).collapse()

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ClosedFormSum):
            return (-other) + self
        try:
            o = ClosedFormValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    # -- comparison -------------------------------------------------------

    def _key(self):
        return (self.sign, self.factors, self.pi_exp, self.ell_exp)

    def __eq__(self, other):
        if isinstance(other, ClosedFormSum):
            return other == self
        try:
            o = ClosedFormValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self):
        return hash(self._key())

    def _cmp(self, other) -> int:
        if self == other:
            return 0
        a = self.evaluate(_CMP_DPS)
        b = _evaluate(other, _CMP_DPS)
        return (a > b) - (a < b)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- evaluation and rendering -----------------------------------------

    def evaluate(self, dps: int = 30) -> mpmath.mpf:
        if self.sign == 0:
            return mpmath.mpf(0)
        with mpmath.workdps(dps + 10):
            x = mpmath.mpf(self.sign)
            for p, e in self.factors:
                x *= mpmath.power(p, mpmath.mpf(e.numerator) / e.denominator)
            if self.pi_exp:
                x *= mpmath.power(mpmath.pi, mpmath.mpf(self.pi_exp.numerator) / self.pi_exp.denominator)
            if self.ell_exp:
                x *= elliptic_E(ELLIPTIC_MODULUS, dps + 10) ** self.ell_exp
            return +x

    def __float__(self):
        return float(self.evaluate(20))

    def render(self) -> str:
        """Exact rendering, ``q*sqrt(s)*pi^k*E^m`` when the value has that form."""
        if self.sign == 0:
            return "0"
        parts = []
        pi_exp, ell_exp, fr = self.shape()
        q = self.rational_part()
        sqrt_form = all(e == Fraction(1, 2) for _, e in fr)
        if sqrt_form:
            rad = math.prod(p for p, _ in fr)
            head = str(q)
            if rad != 1:
                parts.append(f"sqrt({rad})")
        else:
            head = str(q)
            for p, e in fr:
                parts.append(f"{p}^({e})")
        if pi_exp:
            parts.append("pi" if pi_exp == 1 else f"pi^{_exp_str(pi_exp)}")
        if ell_exp:
            parts.append("E" if ell_exp == 1 else f"E^{ell_exp}")
        if not parts:
            return head
        if q == 1:
            return "*".join(parts)
        if q == -1:
            return "-" + "*".join(parts)
        return "*".join([head] + parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ClosedFormValue({self.render()})"


def _exp_str(e: Fraction) -> str:
    return str(e) if e.denominator == 1 else f"({e})"


class ClosedFormSum:
    """Formal sum of closed-form monomials with pairwise distinct shapes.

    Produced when adding values that are not like terms.  It has no single
    closed form, so it is tagged numeric-only, but it keeps its terms so that
    identities between sums can still be checked exactly.
    """

    __slots__ = ("terms",)
    numeric_only = True

    def __init__(self, terms: tuple[ClosedFormValue, ...]):
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("ClosedFormSum is immutable")

    @classmethod
    def of(cls, values: Iterable) -> "ClosedFormSum":
        acc: dict[tuple, Fraction] = {}
        units: dict[tuple, ClosedFormValue] = {}
        for v in values:
            if isinstance(v, ClosedFormSum):
                items = v.terms
            else:
                items = (ClosedFormValue.coerce(v),)
            for t in items:
                if t.sign == 0:
                    continue
                k = t.shape()
                acc[k] = acc.get(k, Fraction(0)) + t.rational_part()
                units.setdefault(k, t.unit())
        terms = tuple(units[k] * acc[k] for k in sorted(acc, key=_shape_sort_key) if acc[k] != 0)
        return cls(terms)

    def collapse(self):
        """Return a ClosedFormValue when the sum has at most one term."""
        if not self.terms:
            return ClosedFormValue(0)
        if len(self.terms) == 1:
            return self.terms[0]
        return self

    def __add__(self, other):
        return ClosedFormSum.of([self, other]).collapse()

    __radd__ = __add__

    def __neg__(self):
        return ClosedFormSum(tuple(-t for t in self.terms))

    def __sub__(self, other):
        if isinstance(other, ClosedFormSum):
            return self + (-other)
        return self + (-ClosedFormValue.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ClosedFormSum):
            return ClosedFormSum.of([a * b for a in self.terms for b in other.terms]).collapse()
        o = ClosedFormValue.coerce(other)
        return ClosedFormSum.of([t * o for t in self.terms]).collapse()

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (ClosedFormSum, ClosedFormValue, int, Fraction)):
            diff = ClosedFormSum.of([self, -ClosedFormValue.coerce(other)
                                     if not isinstance(other, ClosedFormSum) else -other])
            return not diff.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def evaluate(self, dps: int = 30) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            return +mpmath.fsum(t.evaluate(dps + 10) for t in self.terms)

    def __float__(self):
        return float(self.evaluate(20))

    def _cmp(self, other) -> int:
        a = self.evaluate(_CMP_DPS)
        b = _evaluate(other, _CMP_DPS)
        return (a > b) - (a < b)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def render(self) -> str:
        out = self.terms[0].render()
        for t in self.terms[1:]:
            r = t.render()
            out += f" - {r[1:]}" if r.startswith("-") else f" + {r}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ClosedFormSum({self.render()})"


def _shape_sort_key(shape):
    pi_exp, ell_exp, fr = shape
    return (ell_exp, pi_exp, fr)


Exact = Union[ClosedFormValue, ClosedFormSum]


def _evaluate(x, dps: int):
    if isinstance(x, (ClosedFormValue, ClosedFormSum)):
        return x.evaluate(dps)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def cf(coeff: Number = 1, radicand: int = 1, pi_exp: Number = 0, ell_exp: int = 0) -> ClosedFormValue:
    """Build ``coeff * sqrt(radicand) * pi^pi_exp * E^ell_exp``.

    ``radicand`` need not be square-free; square factors move into the
    coefficient, so ``cf(1, 12) == cf(2, 3)``.
    """
    if radicand < 1 or radicand != int(radicand):
        raise DomainError("radicand must be a positive integer")
    v = ClosedFormValue.from_rational(_frac(coeff))
    if v.sign == 0:
        return v
    v = v * ClosedFormValue.from_rational(int(radicand)) ** Fraction(1, 2)
    return v * ClosedFormValue(1, (), pi_exp, ell_exp)


def sqrt(x) -> ClosedFormValue:
    return ClosedFormValue.coerce(x) ** Fraction(1, 2)


ONE = ClosedFormValue(1)
ZERO = ClosedFormValue(0)
PI = ClosedFormValue(1, (), 1)
E_CONST = ClosedFormValue(1, (), 0, 1)
TWO_PI = 2 * PI

#: Modulus at which the library's elliptic constant ``E`` is taken.
ELLIPTIC_MODULUS = cf(Fraction(2, 3), 2)


def cf_eval(v, precision_digits: int = 10) -> Decimal:
    """Decimal approximation of an exact value with ``precision_digits`` significant digits."""
    if precision_digits < 1 or precision_digits > 50:
        raise DomainError("precision_digits must lie in [1, 50]")
    x = _evaluate(v, precision_digits + 10)
    with mpmath.workdps(precision_digits + 10):
        s = mpmath.nstr(x, precision_digits, strip_zeros=False,
                        min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    return Decimal(s)


# -- complete elliptic integral ----------------------------------------------

def _to_mpf(x) -> mpmath.mpf:
    if isinstance(x, (ClosedFormValue, ClosedFormSum)):
        return x.evaluate(mpmath.mp.dps)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, Decimal):
        return mpmath.mpf(str(x))
    return mpmath.mpf(x)


def _agm_E(k: mpmath.mpf) -> mpmath.mpf:
    if k < 0 or k > 1:
        raise DomainError(f"modulus must lie in [0, 1], got {mpmath.nstr(k, 15)}")
    if k == 1:
        return mpmath.mpf(1)
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec)
    a = mpmath.mpf(1)
    b = mpmath.sqrt(1 - k * k)
    weight = mpmath.mpf(1) / 2
    acc = weight * k * k
    while True:
        c = (a - b) / 2
        a, b = (a + b) / 2, mpmath.sqrt(a * b)
        weight *= 2
        acc += weight * c * c
        if abs(c) <= eps * a:
            break
    return mpmath.pi / (2 * a) * (1 - acc)


@lru_cache(maxsize=256)
def _elliptic_E_exact(k, dps: int) -> mpmath.mpf:
    with mpmath.workdps(dps + 10):
        return _agm_E(_to_mpf(k))


def elliptic_E(modulus, dps: int = 30) -> mpmath.mpf:
    """Complete elliptic integral of the second kind E(k) by the AGM iteration.

    ``modulus`` is k in ``integral_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt``; it may be
    an int, Fraction, Decimal, string, float, mpf or ClosedFormValue.
    """
    if isinstance(modulus, (int, Fraction, ClosedFormValue)):
        return _elliptic_E_exact(modulus, dps)
    with mpmath.workdps(dps + 10):
        return _agm_E(_to_mpf(modulus))
