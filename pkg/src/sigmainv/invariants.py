"""Dimension-generic identities between embedding data and intrinsic invariants.

For an isometric embedding of an n-manifold into a round sphere the scalar
curvature is ``n(n-1) + |H|^2 - |alpha|^2``.  Integrating against the volume
gives the three functionals

* ``n(n-1) * vol``  (total exterior scalar curvature),
* ``|H|^2 * vol``   (mean energy; written Psi or Phi in the literature),
* ``|alpha|^2 * vol`` (second fundamental form energy),

from which the conformal functionals W and D are built.  Values may be
Fractions or exact closed forms; anything exact stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .closedform import PI, ClosedFormValue, Exact, cf, sqrt
from .errors import DomainError

TOLERANCE = Fraction(1, 10**10)


def _nonneg(x, name):
    if isinstance(x, (int, Fraction)):
        if x < 0:
            raise DomainError(f"{name} must be non-negative")
    elif float(x) < 0:
        raise DomainError(f"{name} must be non-negative")


def gauss_scalar(n: int, mean_sq, second_sq):
    """Scalar curvature ``n(n-1) + |H|^2 - |alpha|^2`` of an embedded n-manifold."""
    if n < 1:
        raise DomainError("dimension must be at least 1")
    _nonneg(mean_sq, "mean_sq")
    _nonneg(second_sq, "second_sq")
    return n * (n - 1) + mean_sq - second_sq


@dataclass(frozen=True)
class ExtrinsicData:
    """Constant-norm embedding data: |H|^2, |alpha|^2 and the volume."""

    n: int
    mean_sq: object
    second_sq: object
    volume: object

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("dimension must be at least 1")
        _nonneg(self.mean_sq, "mean_sq")
        _nonneg(self.second_sq, "second_sq")

    def exterior_curvature_energy(self):
        return self.n * (self.n - 1) * self.volume

    def mean_energy(self):
        return self.mean_sq * self.volume

    def second_energy(self):
        return self.second_sq * self.volume


@dataclass(frozen=True)
class WDPair:
    W: object
    D: object

    def total_scalar(self):
        return self.W - self.D


def wd_from_extrinsic(d: ExtrinsicData) -> WDPair:
    """W and D of a constant-norm embedding.

    For n >= 2 these are ``(n^2 + |H|^2) vol`` and ``(n + |alpha|^2) vol``;
    for n = 1 both equal the mean energy.
    """
    if d.n == 1:
        e = d.mean_energy()
        return WDPair(e, e)
    n = d.n
    return WDPair((n * n + d.mean_sq) * d.volume, (n + d.second_sq) * d.volume)


def c2_min(n: int, mean_sq) -> Fraction:
    """Homothety factor ``1 + |H|^2 / n^2`` that makes the class realizer minimal."""
    if n < 2:
        raise DomainError("c2_min needs n >= 2")
    _nonneg(mean_sq, "mean_sq")
    if isinstance(mean_sq, float):
        mean_sq = Fraction(mean_sq)
    return 1 + mean_sq / (n * n)


def sphere_volume(n: int) -> ClosedFormValue:
    """Volume of the unit n-sphere, ``2 pi^((n+1)/2) / Gamma((n+1)/2)``."""
    if n < 0:
        raise DomainError("negative dimension")
    half = Fraction(n + 1, 2)
    if half.denominator == 1:
        gamma = ClosedFormValue.from_rational(math.factorial(int(half) - 1))
    else:
        # Gamma(k + 1/2) = (2k)! / (4^k k!) * sqrt(pi)
        k = int(half - Fraction(1, 2))
        gamma = cf(Fraction(math.factorial(2 * k), 4**k * math.factorial(k))) * PI ** Fraction(1, 2)
    return 2 * PI**half / gamma


def aubin_bound(n: int) -> ClosedFormValue:
    """Yamabe invariant of the round n-sphere, ``n(n-1) omega_n^(2/n)``."""
    if n < 3:
        raise DomainError("the Aubin bound is stated for n >= 3")
    return n * (n - 1) * sphere_volume(n) ** Fraction(2, n)


@dataclass(frozen=True)
class YamabeResult:
    lam: object
    aubin: ClosedFormValue
    within_bound: bool


def yamabe_and_aubin(n: int, scalar, volume) -> YamabeResult:
    """Volume-normalized total scalar curvature ``s * vol^(2/n)`` against Aubin's bound.

    With exact inputs the quotient is exact; the bound check allows a
    relative slack of 1e-10.
    """
    if n < 3:
        raise DomainError("the Yamabe quotient is used here for n >= 3")
    if float(volume) <= 0:
        raise DomainError("volume must be positive")
    if isinstance(volume, (int, Fraction, ClosedFormValue)) and isinstance(
            scalar, (int, Fraction, ClosedFormValue)):
        lam = ClosedFormValue.coerce(scalar) * ClosedFormValue.coerce(volume) ** Fraction(2, n)
    else:
        lam = float(scalar) * float(volume) ** (2 / n)
    aubin = aubin_bound(n)
    if isinstance(lam, ClosedFormValue) and lam == aubin:
        within = True
    else:
        a = float(aubin)
        within = float(lam) <= a + float(TOLERANCE) * a
    return YamabeResult(lam, aubin, within)


@dataclass(frozen=True)
class LowDimSigma:
    sigma: object
    W: object = None
    D: object = None


def sigma_low_dim(n: int, chi: int = 0, W_opt=None) -> LowDimSigma:
    """Sigma invariant of a circle (n = 1) or a closed surface (n = 2).

    For the circle the value is 0 and the class invariants are set to
    ``W = D = 2 pi`` by convention.  For a surface of Euler characteristic
    ``chi`` it is ``8 pi chi / sqrt(W_opt)`` with W_opt the optimal W value.
    """
    if n == 1:
        return LowDimSigma(ClosedFormValue(0), 2 * PI, 2 * PI)
    if n != 2:
        raise DomainError("sigma_low_dim handles n = 1 or 2")
    if W_opt is None or float(W_opt) <= 0:
        raise DomainError("W_opt must be positive for surfaces")
    if chi == 0:
        return LowDimSigma(ClosedFormValue(0))
    W = ClosedFormValue.coerce(W_opt) if isinstance(W_opt, (int, Fraction, ClosedFormValue)) else W_opt
    if isinstance(W, ClosedFormValue):
        return LowDimSigma(8 * chi * PI / sqrt(W))
    return LowDimSigma(8 * math.pi * chi / math.sqrt(float(W)))


def exact(x) -> Exact:
    """Promote an int or Fraction to a closed form; pass exact values through."""
    return ClosedFormValue.coerce(x) if isinstance(x, (int, Fraction)) else x
