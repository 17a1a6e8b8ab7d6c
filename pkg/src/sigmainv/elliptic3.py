"""Elliptic 3-manifolds S^3 / Gamma: canonical invariants, sigma, Lens classification.

The canonical metric on ``S^3/Gamma`` comes from a minimal isometric embedding
of the round sphere of radius ``r`` with ``r^2 = |Gamma|^(3/2)``, built from
Gamma-invariant harmonic polynomials of degree ``|Gamma|``.  Everything
below is a function of ``|Gamma|``, except the Lens classification and the
check of an explicit embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Optional, Sequence

from .closedform import PI, ClosedFormValue
from .errors import DomainError, InvalidDescriptorError, ShapeError
from .harmonics import (HarmonicCandidate, LensAction, is_harmonic,
                        lens_invariant_space, real_form_basis)
from .invariants import yamabe_and_aubin
from .polynomial import REAL_NAMES, Poly, gradient, real_laplacian, real_variables

F = Fraction
SIGMA_S3 = 6 * (2 * PI**2) ** F(2, 3)


def _q(x) -> ClosedFormValue:
    return ClosedFormValue.from_rational(x)


@dataclass(frozen=True)
class EllipticInvariants:
    order: int
    r2: ClosedFormValue
    volume: ClosedFormValue
    scalar: ClosedFormValue
    alpha_sq: object        # 6 - scalar; a ClosedFormSum unless the order is 1
    W: ClosedFormValue
    D: object
    lam: ClosedFormValue

    @property
    def sigma(self) -> ClosedFormValue:
        return self.lam


def elliptic_invariants(order: int) -> EllipticInvariants:
    """Canonical data of ``S^3/Gamma`` with ``|Gamma| = order``.

    >>> elliptic_invariants(1).volume.render()
    '2*pi^2'
    """
    if not isinstance(order, int) or order < 1:
        raise DomainError("the group order must be a positive integer")
    n = _q(order)
    r2 = n ** F(3, 2)
    volume = 2 * PI**2 * r2 ** F(3, 2)
    scalar = 6 / (n ** F(2, 3) * r2)
    alpha_sq = 6 - scalar
    W = 9 * volume
    D = W - scalar * volume
    lam = scalar * volume ** F(2, 3)
    return EllipticInvariants(order, r2, volume, scalar, alpha_sq, W, D, lam)


def sigma_of_order(order: int) -> ClosedFormValue:
    return SIGMA_S3 / _q(order) ** F(2, 3)


# -- the classification cases ---------------------------------------------------

H1_ORDERS = {"tetrahedral": 12, "octahedral": 24, "icosahedral": 60}


@dataclass(frozen=True)
class EllipticDescriptor:
    """One of the four cases of the classification of elliptic 3-manifolds.

    * ``a``: cyclic, ``p`` and ``q``;
    * ``b``: ``H = H1 x H2`` with H1 dihedral (``h1_order = 2k``), tetrahedral,
      octahedral or icosahedral and H2 cyclic of order ``h2_order``;
    * ``c``: index-3 subgroup of ``T x C_{3m}``, m odd;
    * ``d``: index-2 subgroup of ``C_{2n} x D_{2m}``, n even, gcd(m, n) = 1.
    """

    case: str
    p: int = 1
    q: int = 0
    h1_kind: str = ""
    h1_order: int = 0
    h2_order: int = 1
    m: int = 1
    n: int = 2

    def __post_init__(self):
        if self.case not in "abcd" or len(self.case) != 1:
            raise InvalidDescriptorError(f"unknown case {self.case!r}")
        if self.case == "a":
            if self.p < 1 or gcd(self.p, self.q) != 1:
                raise InvalidDescriptorError("case (a) needs p >= 1 and gcd(p, q) = 1")
        elif self.case == "b":
            if self.h1_kind == "dihedral":
                if self.h1_order < 4 or self.h1_order % 2:
                    raise InvalidDescriptorError("a dihedral H1 has even order 2k with k >= 2")
            elif self.h1_kind in H1_ORDERS:
                if self.h1_order not in (0, H1_ORDERS[self.h1_kind]):
                    raise InvalidDescriptorError(f"{self.h1_kind} group has order {H1_ORDERS[self.h1_kind]}")
            else:
                raise InvalidDescriptorError(f"unknown H1 kind {self.h1_kind!r}")
            if self.h2_order < 1 or gcd(self.h1_size, self.h2_order) != 1:
                raise InvalidDescriptorError("|H1| and |H2| must be relatively prime")
        elif self.case == "c":
            if self.m < 1 or self.m % 2 == 0:
                raise InvalidDescriptorError("case (c) needs m odd")
        else:
            if self.n < 2 or self.n % 2 or self.m < 1 or gcd(self.m, self.n) != 1:
                raise InvalidDescriptorError("case (d) needs n even and gcd(m, n) = 1")

    @property
    def h1_size(self) -> int:
        return self.h1_order if self.h1_kind == "dihedral" else H1_ORDERS.get(self.h1_kind, 0)

    @property
    def H_order(self) -> Optional[int]:
        """Order of H, the group acting on RP^3; None in the cyclic case."""
        if self.case == "a":
            return None
        if self.case == "b":
            return self.h1_size * self.h2_order
        if self.case == "c":
            return 12 * 3 * self.m // 3
        return 2 * self.n * 2 * self.m // 2

    @property
    def pi1_order(self) -> int:
        return self.p if self.case == "a" else 2 * self.H_order


@dataclass(frozen=True)
class SigmaReport:
    descriptor: EllipticDescriptor
    pi1_order: int
    sigma: ClosedFormValue
    via_rp3: Optional[ClosedFormValue] = None
    via_s3: Optional[ClosedFormValue] = None

    @property
    def forms_agree(self) -> bool:
        return all(v is None or v == self.sigma for v in (self.via_rp3, self.via_s3))


def sigma_elliptic(desc: EllipticDescriptor) -> SigmaReport:
    order = desc.pi1_order
    sigma = sigma_of_order(order)
    if desc.case == "a":
        return SigmaReport(desc, order, sigma)
    H = desc.H_order
    rp3 = sigma_of_order(2)
    return SigmaReport(desc, order, sigma,
                       via_rp3=rp3 / _q(H) ** F(2, 3),
                       via_s3=SIGMA_S3 / _q(2 * H) ** F(2, 3))


def yamabe_check(order: int):
    """Compare the canonical lambda with Aubin's bound through the generic routine."""
    inv = elliptic_invariants(order)
    return inv, yamabe_and_aubin(3, inv.scalar, inv.volume)


# -- Lens spaces ------------------------------------------------------------------

def canonical_q(p: int, q: int) -> int:
    """Smallest of ``+-q, +-q^-1 mod p``; equal for diffeomorphic L(p, q)."""
    if p < 1 or gcd(p, q) != 1:
        raise DomainError(f"L({p}, {q}) is not a Lens space")
    if p <= 2:
        return q % p
    inv = pow(q, -1, p)
    return min(x % p for x in (q, -q, inv, -inv))


def _conj_second(f: HarmonicCandidate) -> HarmonicCandidate:
    # reflection w -> -w: swaps z2 and its conjugate, sending (p, q) to (p, -q)
    return HarmonicCandidate(f.degree, f.poly.map_exponents(lambda m: (m[0], m[1], m[3], m[2])))


def _swap_factors(f: HarmonicCandidate) -> HarmonicCandidate:
    # (z1, z2) -> (z2, z1): sends (p, q) to (p, q^-1)
    return HarmonicCandidate(f.degree, f.poly.map_exponents(lambda m: (m[2], m[3], m[0], m[1])))


def normalized_space(p: int, q: int) -> tuple[int, tuple[HarmonicCandidate, ...]]:
    """Carry S^inv(p, q) by coordinate isometries to the frame of ``canonical_q``.

    Returns the canonical q and the canonical (row-reduced) basis of the image.
    """
    target = canonical_q(p, q)
    space = lens_invariant_space(p, q, p)
    basis = list(space.basis)
    if p > 2:
        inv = pow(q, -1, p)
        if target == q % p:
            pass
        elif target == (-q) % p:
            basis = [_conj_second(f) for f in basis]
        elif target == inv:
            basis = [_swap_factors(f) for f in basis]
        else:
            basis = [_conj_second(_swap_factors(f)) for f in basis]
    return target, tuple(real_form_basis(basis, p))


@dataclass(frozen=True)
class LensDiffeoResult:
    p: int
    q: int
    q_prime: int
    verdict: bool
    dimension_witness: tuple[int, int]
    subspace_equal_after_normalization: bool
    canonical: tuple[int, int]


def lens_diffeo(p: int, q: int, q_prime: int) -> LensDiffeoResult:
    """Decide whether L(p, q) and L(p, q') are diffeomorphic.

    The verdict compares canonical representatives.  Independently, both
    invariant spaces are moved into their canonical frames and their reduced
    bases compared, and their dimensions reported as a witness.
    """
    cq, cqp = canonical_q(p, q), canonical_q(p, q_prime)
    dims = (lens_invariant_space(p, q, p).dimension, lens_invariant_space(p, q_prime, p).dimension)
    t1, b1 = normalized_space(p, q)
    t2, b2 = normalized_space(p, q_prime)
    same = t1 == t2 and b1 == b2
    return LensDiffeoResult(p, q, q_prime, cq == cqp, dims, same, (cq, cqp))


def classical_lens_criterion(p: int, q: int, q_prime: int) -> bool:
    """q' = +-q^(+-1) mod p, checked by brute force over units."""
    return any((q_prime - s * x) % p == 0 for s in (1, -1)
               for x in {q % p, pow(q, -1, p) if p > 1 else 0})


# -- explicit embeddings ----------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingComponent:
    """A component ``sqrt(scale_sq) * poly`` with ``poly`` a rational real polynomial."""

    poly: Poly
    scale_sq: Fraction = Fraction(1)

    def __post_init__(self):
        if self.scale_sq <= 0:
            raise DomainError("scale_sq must be positive")

    def render(self) -> str:
        body = self.poly.render(REAL_NAMES)
        if self.scale_sq == 1:
            return body
        return f"sqrt({self.scale_sq})*({body})"


@dataclass
class EmbeddingReport:
    degree: int
    p: int
    q: int
    harmonic: bool
    invariant: bool
    sum_of_squares: bool
    round: bool
    constant: Optional[Fraction]        # set only when the pullback is round
    mean_constant: Optional[Fraction]   # tangential trace / 3, when it is the same at every probe
    expected_constant: Fraction
    probes: int
    symbolic: bool
    residual: Optional[str] = None
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.harmonic and self.invariant and self.sum_of_squares and self.round \
            and self.constant == self.expected_constant


def pythagorean_points(count: int, bound: int = 12) -> list[tuple[Fraction, ...]]:
    """Rational points ``(a, b, c, d)/e`` on the unit 3-sphere with all entries nonzero."""
    out = []
    for s in range(4, 4 * bound * bound + 1):
        for a, b, c in product(range(1, bound + 1), repeat=3):
            d2 = s - a * a - b * b - c * c
            if d2 < 1:
                continue
            d = isqrt(d2)
            if d * d != d2:
                continue
            e = isqrt(s)
            if e * e != s:
                continue
            signs = ((-1) ** len(out), (-1) ** (len(out) // 2), 1, (-1) ** (len(out) // 3))
            out.append(tuple(Fraction(sg * v, e) for sg, v in zip(signs, (a, b, c, d))))
            if len(out) == count:
                return out
    return out


def _as_components(components) -> list[EmbeddingComponent]:
    out = []
    for c in components:
        if isinstance(c, EmbeddingComponent):
            out.append(c)
        elif isinstance(c, HarmonicCandidate):
            out.append(EmbeddingComponent(c.to_real_rational()))
        elif isinstance(c, Poly):
            out.append(EmbeddingComponent(c))
        else:
            raise TypeError(f"cannot use {type(c).__name__} as an embedding component")
    return out


def verify_min_embedding(components: Sequence, p: int, q: int, orientation: int = 1,
                         probes: int = 20, symbolic: bool = False) -> EmbeddingReport:
    """Check that the components define a minimal isometric embedding of S^3/(p, q).

    Each check is exact: harmonicity, invariance (after rewriting in complex
    coordinates with ``z2 = z + orientation * i w``), the identity
    ``sum f_i^2 = (x^2 + y^2 + z^2 + w^2)^d``, and roundness of the pullback
    metric.  Roundness is probed at rational sphere points; ``symbolic=True``
    instead checks the full polynomial identity for the pulled-back form.
    """
    comps = _as_components(components)
    if not comps:
        raise ShapeError("no components")
    degs = set()
    for c in comps:
        ds = c.poly.degrees()
        if len(ds) != 1:
            raise ShapeError("every component must be a nonzero homogeneous polynomial")
        degs |= ds
    if len(degs) != 1:
        raise ShapeError(f"components have mixed degrees {sorted(degs)}")
    d = degs.pop()
    action = LensAction(p, q)
    failures = []

    harmonic = True
    invariant = True
    for i, c in enumerate(comps):
        if not real_laplacian(c.poly).is_zero():
            harmonic = False
            failures.append(f"component {i + 1} is not harmonic")
        hc = HarmonicCandidate.from_real(c.poly, orientation)
        if not is_harmonic(hc):  # pragma: no cover - agrees with the real Laplacian
            harmonic = False
        if not all(action.weight(m) == 0 for m in hc.poly.terms):
            invariant = False
            failures.append(f"component {i + 1} is not invariant under ({p}, {q})")

    x, y, z, w = real_variables()
    r2 = x * x + y * y + z * z + w * w
    total = Poly(4)
    for c in comps:
        total = total + c.poly * c.poly * c.scale_sq
    residual_poly = total - r2**d
    sos = residual_poly.is_zero()
    residual = None if sos else residual_poly.render(REAL_NAMES)
    if not sos:
        failures.append("sum of squares differs from |x|^(2d)")

    expected = Fraction(d * (d + 2), 3)
    grads = [gradient(c.poly) for c in comps]
    if symbolic:
        ok, const, mean = _round_symbolic(comps, grads, d, r2, failures)
    else:
        ok, const, mean = _round_probe(comps, grads, probes, failures)
    return EmbeddingReport(d, p, q, harmonic, invariant, sos, ok, const, mean, expected,
                           0 if symbolic else probes, symbolic, residual, failures)


def _pullback_matrix(comps, grads, P) -> list[list[Fraction]]:
    gvals = [[g.evaluate(P) for g in grad] for grad in grads]
    return [[sum((c.scale_sq * gv[i] * gv[j] for c, gv in zip(comps, gvals)), Fraction(0))
             for j in range(4)] for i in range(4)]


def _round_probe(comps, grads, probes, failures):
    """Returns (round, uniform constant, tangential mean constant)."""
    points = pythagorean_points(probes)
    if len(points) < probes:
        raise DomainError("not enough rational probe points")
    round_ok = True
    mean = None
    for P in points:
        M = _pullback_matrix(comps, grads, P)
        radial = sum((P[i] * M[i][j] * P[j] for i in range(4) for j in range(4)), Fraction(0))
        t = (sum(M[i][i] for i in range(4)) - radial) / 3
        if mean is None:
            mean = t
        elif t != mean:
            failures.append(f"tangential trace varies: {3 * t} at {tuple(map(str, P))}")
            mean = False
        if not round_ok:
            continue
        # tangent vectors e_i - P_i P; pullback must equal t times their inner product
        for i in range(4):
            for j in range(i, 4):
                u = [Fraction(int(i == k)) - P[i] * P[k] for k in range(4)]
                v = [Fraction(int(j == k)) - P[j] * P[k] for k in range(4)]
                pulled = sum((u[a] * M[a][b] * v[b] for a in range(4) for b in range(4)), Fraction(0))
                base = sum((a * b for a, b in zip(u, v)), Fraction(0))
                if pulled != t * base:
                    failures.append(f"pullback not round at {tuple(map(str, P))}: "
                                    f"<dF u{i + 1}, dF u{j + 1}> = {pulled}, {t} * <u, v> = {t * base}")
                    round_ok = False
                    break
            if not round_ok:
                break
    mean = mean if mean is not False else None
    return round_ok, (mean if round_ok else None), mean


def _round_symbolic(comps, grads, d, r2, failures):
    # the pullback form sum_i s_i grad f_i grad f_i^T must equal
    # c r^(2d-2) Id + (d^2 - c) r^(2d-4) x x^T
    xs = real_variables()
    M = [[Poly(4) for _ in range(4)] for _ in range(4)]
    for c, g in zip(comps, grads):
        for i in range(4):
            for j in range(4):
                M[i][j] = M[i][j] + g[i] * g[j] * c.scale_sq
    trace = M[0][0] + M[1][1] + M[2][2] + M[3][3]
    lead = r2 ** (d - 1)
    m0, v0 = next(iter(lead.terms.items()))
    coeff = Fraction(trace.terms.get(m0, 0)) / Fraction(v0)
    if trace != lead * coeff:
        failures.append("trace of the pullback form is not a multiple of |x|^(2d-2)")
        return False, None, None
    c = (coeff - d * d) / 3
    for i in range(4):
        for j in range(4):
            want = lead * c * int(i == j)
            if d >= 2:
                want = want + r2 ** (d - 2) * xs[i] * xs[j] * (d * d - c)
            elif c != 1:
                failures.append("degree-1 map is not a multiple of an isometry")
                return False, None, c
            if M[i][j] != want:
                failures.append(f"pullback form differs from the round one in entry ({i + 1}, {j + 1})")
                return False, None, c
    return True, c, c


def l31_map() -> tuple[list[EmbeddingComponent], int]:
    """The degree-3 map of L(3, 1) into S^7, with its orientation convention.

    The last component carries ``-2 z w x`` (the sign pattern forced by
    ``Im(z1 z2^2)``).  The map is invariant for ``(3, 1)`` when ``z2 = z - i w``.
    """
    x, y, z, w = real_variables()
    three = Fraction(3)
    comps = [
        EmbeddingComponent(x**3 - 3 * x * y * y),
        EmbeddingComponent(3 * x * x * y - y**3),
        EmbeddingComponent(z**3 - 3 * z * w * w),
        EmbeddingComponent(3 * z * z * w - w**3),
        EmbeddingComponent((x * x - y * y) * z + 2 * x * y * w, three),
        EmbeddingComponent(2 * x * y * z - (x * x - y * y) * w, three),
        EmbeddingComponent((z * z - w * w) * x + 2 * z * w * y, three),
        EmbeddingComponent((z * z - w * w) * y - 2 * z * w * x, three),
    ]
    return comps, -1


def verify_l31(probes: int = 20, symbolic: bool = False) -> EmbeddingReport:
    comps, orientation = l31_map()
    return verify_min_embedding(comps, 3, 1, orientation, probes, symbolic)

