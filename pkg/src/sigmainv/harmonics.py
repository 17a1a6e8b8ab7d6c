"""Homogeneous harmonic polynomials on R^4 and their invariants under finite groups.

Polynomials are written in the complex coordinates ``z1 = x + i y`` and
``z2 = z + i w`` (or ``z - i w``, see ``orientation``), with the monomial
``z1^a conj(z1)^b z2^c conj(z2)^e`` keyed by its exponent tuple ``(a, b, c, e)``.
In these coordinates the Euclidean Laplacian is ``4 (d1 dbar1 + d2 dbar2)``,
which is diagonal-free on monomials, and a cyclic action
``(z1, z2) -> (w z1, w^q z2)`` multiplies each monomial by a root of unity, so
invariance is a weight condition and everything stays over Q(i).

Dimensions for noncyclic groups come from the Molien series, evaluated
exactly through cyclotomic reduction.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm
from typing import Iterable, Mapping

from . import linalg
from .errors import DomainError, InvalidActionError, ShapeError
from .polynomial import I, GaussianRational, Poly, real_variables

Monomial = tuple[int, int, int, int]


def monomials(d: int) -> list[Monomial]:
    """All exponent tuples of total degree d, in lexicographically decreasing order."""
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            for c in range(d - a - b, -1, -1):
                out.append((a, b, c, d - a - b - c))
    return out


def conj_monomial(m: Monomial) -> Monomial:
    a, b, c, e = m
    return (b, a, e, c)


class HarmonicCandidate:
    """Homogeneous polynomial of degree d in complex monomial coordinates."""

    __slots__ = ("degree", "poly")

    def __init__(self, degree: int, coeffs: Mapping[Monomial, object] | Poly):
        poly = coeffs if isinstance(coeffs, Poly) else Poly(
            4, {tuple(m): GaussianRational.coerce(c) for m, c in coeffs.items()})
        if degree < 0:
            raise DomainError("degree must be non-negative")
        if not poly.is_homogeneous(degree):
            raise ShapeError(f"polynomial is not homogeneous of degree {degree}")
        self.degree = degree
        self.poly = poly

    @property
    def coeffs(self) -> dict[Monomial, GaussianRational]:
        return {m: GaussianRational.coerce(c) for m, c in self.poly.terms.items()}

    def conjugate(self) -> "HarmonicCandidate":
        return HarmonicCandidate(self.degree, self.poly.map_exponents(
            conj_monomial, lambda c: GaussianRational.coerce(c).conjugate()))

    def is_real(self) -> bool:
        """True iff the polynomial takes real values (conjugation symmetry)."""
        return self.conjugate().poly == self.poly

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: "HarmonicCandidate"):
        return HarmonicCandidate(self.degree, self.poly + other.poly)

    def __sub__(self, other: "HarmonicCandidate"):
        return HarmonicCandidate(self.degree, self.poly - other.poly)

    def __mul__(self, c):
        return HarmonicCandidate(self.degree, self.poly * GaussianRational.coerce(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, HarmonicCandidate) and self.degree == other.degree and self.poly == other.poly

    def __hash__(self):
        return hash((self.degree, self.poly))

    def __repr__(self):
        return f"HarmonicCandidate({self.degree}, {self.poly.render(('z1', 'zb1', 'z2', 'zb2'))})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"exponents": list(m), "re": str(GaussianRational.coerce(c).re),
                       "im": str(GaussianRational.coerce(c).im)}
                      for m, c in self.poly.sorted_terms()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "HarmonicCandidate":
        coeffs = {tuple(t["exponents"]): GaussianRational(Fraction(t["re"]), Fraction(t.get("im", 0)))
                  for t in doc["terms"]}
        return cls(int(doc["degree"]), coeffs)

    def to_real(self, orientation: int = 1) -> Poly:
        """Expand in x, y, z, w; ``orientation`` = -1 uses ``z2 = z - i w``.

        The result has Gaussian coefficients; they are real iff ``is_real()``.
        """
        x, y, z, w = real_variables()
        s = 1 if orientation >= 0 else -1
        images = [x + y * I, x - y * I, z + w * (s * I), z - w * (s * I)]
        return self.poly.substitute(images)

    def to_real_rational(self, orientation: int = 1) -> Poly:
        p = self.to_real(orientation)
        if any(not GaussianRational.coerce(c).is_real() for c in p.terms.values()):
            raise DomainError("polynomial is not real-valued")
        return Poly(4, {m: GaussianRational.coerce(c).re for m, c in p.terms.items()})

    @classmethod
    def from_real(cls, f: Poly, orientation: int = 1) -> "HarmonicCandidate":
        """Rewrite a homogeneous real polynomial in complex monomials."""
        degs = f.degrees()
        if len(degs) > 1:
            raise ShapeError("polynomial is not homogeneous")
        d = degs.pop() if degs else 0
        z1, zb1, z2, zb2 = (Poly.variable(4, i) for i in range(4))
        half = Fraction(1, 2)
        s = 1 if orientation >= 0 else -1
        x = (z1 + zb1) * half
        y = (z1 - zb1) * (-half * I)
        z = (z2 + zb2) * half
        w = (z2 - zb2) * (-half * s * I)
        return cls(d, f.substitute([x, y, z, w]))


def harm_space_dim(d: int) -> int:
    if d < 0:
        raise DomainError("degree must be non-negative")
    return (d + 1) ** 2


def _laplacian_image(m: Monomial) -> list[tuple[Monomial, int]]:
    a, b, c, e = m
    out = []
    if a and b:
        out.append(((a - 1, b - 1, c, e), 4 * a * b))
    if c and e:
        out.append(((a, b, c - 1, e - 1), 4 * c * e))
    return out


def laplacian(f: HarmonicCandidate) -> Poly:
    """``4 (d/dz1 d/dzbar1 + d/dz2 d/dzbar2) f``, which is the Euclidean Laplacian."""
    out: dict[Monomial, object] = defaultdict(lambda: GaussianRational(0))
    for m, coeff in f.poly.terms.items():
        for m2, k in _laplacian_image(m):
            out[m2] = out[m2] + coeff * k
    return Poly(4, out)


def is_harmonic(f: HarmonicCandidate) -> bool:
    return laplacian(f).is_zero()


# -- Lens actions --------------------------------------------------------------

@dataclass(frozen=True)
class LensAction:
    """The cyclic group generated by ``(z1, z2) -> (w z1, w^q z2)``, w = exp(2 pi i/p)."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1:
            raise InvalidActionError("p must be positive")
        if gcd(self.p, self.q) != 1:
            raise InvalidActionError(f"gcd({self.p}, {self.q}) != 1")

    def weight(self, m: Monomial) -> int:
        a, b, c, e = m
        return ((a - b) + self.q * (c - e)) % self.p


def is_invariant(f: HarmonicCandidate, action: LensAction) -> bool:
    return all(action.weight(m) == 0 for m in f.poly.terms)


@dataclass(frozen=True)
class InvariantSpace:
    p: int
    q: int
    degree: int
    dimension: int
    basis: tuple[HarmonicCandidate, ...]
    complex_dimension: int

    def basis_key(self) -> tuple:
        """Hashable canonical form of the basis, for exact subspace comparison."""
        return tuple(tuple(sorted(b.coeffs.items())) for b in self.basis)


def _real_coordinates(monos: list[Monomial]) -> list[tuple[str, Monomial]]:
    coords = []
    for m in monos:
        cm = conj_monomial(m)
        if m == cm:
            coords.append(("re", m))
        elif m > cm:
            coords.append(("re", m))
            coords.append(("im", m))
    return coords


def real_form_basis(kernel: list[HarmonicCandidate], degree: int) -> list[HarmonicCandidate]:
    """Canonical basis of the real-valued elements of a conjugation-stable space.

    Spans ``f + conj f`` and ``i (f - conj f)``, then row-reduces their real
    coordinates (real and imaginary parts over representative monomials).
    """
    monos = sorted({m for f in kernel for m in f.poly.terms} | {conj_monomial(m) for f in kernel
                                                               for m in f.poly.terms}, reverse=True)
    coords = _real_coordinates(monos)
    rows = []
    for f in kernel:
        fc = f.conjugate()
        for g in (f + fc, (f - fc) * I):
            cs = g.coeffs
            rows.append([getattr(cs.get(m, GaussianRational(0)), part) for part, m in coords])
    if not rows:
        return []
    red, pivots = linalg.rref(rows)
    basis = []
    for r in range(len(pivots)):
        vals: dict[Monomial, GaussianRational] = {}
        for (part, m), v in zip(coords, red[r]):
            if not v:
                continue
            cur = vals.get(m, GaussianRational(0))
            vals[m] = cur + (GaussianRational(v) if part == "re" else GaussianRational(0, v))
        full = {}
        for m, c in vals.items():
            full[m] = c
            cm = conj_monomial(m)
            if cm != m:
                full[cm] = c.conjugate()
        basis.append(HarmonicCandidate(degree, full))
    return basis


def _harmonic_kernel(monos: list[Monomial], degree: int) -> list[HarmonicCandidate]:
    """Exact kernel of the Laplacian restricted to the span of ``monos``.

    The Laplacian preserves ``(a - b, c - e)``, so the matrix is block diagonal
    and each block is reduced separately.
    """
    blocks: dict[tuple[int, int], list[Monomial]] = defaultdict(list)
    for m in monos:
        blocks[(m[0] - m[1], m[2] - m[3])].append(m)
    out = []
    for key in sorted(blocks, reverse=True):
        cols = blocks[key]
        targets = sorted({t for m in cols for t, _ in _laplacian_image(m)}, reverse=True)
        index = {t: i for i, t in enumerate(targets)}
        matrix = [[0] * len(cols) for _ in targets]
        for j, m in enumerate(cols):
            for t, k in _laplacian_image(m):
                matrix[index[t]][j] += k
        for v in linalg.nullspace(matrix, ncols=len(cols)):
            out.append(HarmonicCandidate(degree, {m: c for m, c in zip(cols, v) if c}))
    return out


@lru_cache(maxsize=256)
def lens_invariant_space(p: int, q: int, d: int) -> InvariantSpace:
    """Real-valued degree-d harmonic polynomials invariant under the Lens action (p, q)."""
    if d < 0:
        raise DomainError("degree must be non-negative")
    action = LensAction(p, q)
    monos = [m for m in monomials(d) if action.weight(m) == 0]
    kernel = _harmonic_kernel(monos, d)
    basis = real_form_basis(kernel, d)
    if len(basis) != len(kernel):
        raise ArithmeticError("real form lost dimension")  # pragma: no cover
    return InvariantSpace(p, q % p if p > 1 else q, d, len(basis), tuple(basis), len(kernel))


def lens_invariant_dim(p: int, q: int, d: int) -> int:
    """Dimension only; same as ``lens_invariant_space(...).dimension`` but skips the real form."""
    action = LensAction(p, q)
    return len(_harmonic_kernel([m for m in monomials(d) if action.weight(m) == 0], d))


# -- Molien series ------------------------------------------------------------

@dataclass(frozen=True)
class RotationSpectrum:
    """A finite subgroup of SO(4) described by the rotation angles of its elements.

    Each entry ``(alpha, beta, count)`` stands for ``count`` elements whose
    eigenvalues are ``exp(+-2 pi i alpha)`` and ``exp(+-2 pi i beta)``.
    Angles are fractions of a full turn.
    """

    elements: tuple[tuple[Fraction, Fraction, int], ...]
    name: str = ""

    def __post_init__(self):
        if not self.elements:
            raise DomainError("a group has at least the identity")
        for a, b, k in self.elements:
            if not isinstance(a, Fraction) or not isinstance(b, Fraction):
                raise DomainError("rotation angles must be rational")
            if k < 1:
                raise DomainError("element counts must be positive")
        if not any(a.denominator == 1 and b.denominator == 1 for a, b, _ in self.elements):
            raise DomainError("identity element missing")

    @property
    def order(self) -> int:
        return sum(k for _, _, k in self.elements)

    @classmethod
    def of(cls, entries: Iterable, name: str = "") -> "RotationSpectrum":
        merged: dict[tuple[Fraction, Fraction], int] = defaultdict(int)
        for a, b, k in entries:
            a, b = _canon_angle(Fraction(a)), _canon_angle(Fraction(b))
            merged[(a, b)] += k
        return cls(tuple((a, b, k) for (a, b), k in sorted(merged.items())), name)

    @classmethod
    def trivial(cls) -> "RotationSpectrum":
        return cls.of([(0, 0, 1)], "trivial")

    @classmethod
    def cyclic(cls, p: int, q: int) -> "RotationSpectrum":
        LensAction(p, q)
        return cls.of([(Fraction(k, p), Fraction(k * q, p), 1) for k in range(p)], f"C{p}({q})")

    @classmethod
    def left(cls, spectrum: Iterable[tuple[Fraction, int]], name: str = "") -> "RotationSpectrum":
        """Group acting by left multiplication by unit quaternions.

        A unit quaternion of angle ``theta`` (as a fraction of a turn) acts on
        R^4 with both rotation angles equal to ``theta``.
        """
        return cls.of([(t, t, k) for t, k in spectrum], name)

    @classmethod
    def binary_tetrahedral(cls) -> "RotationSpectrum":
        return cls.left(_BINARY["tetrahedral"], "2T")

    @classmethod
    def binary_octahedral(cls) -> "RotationSpectrum":
        return cls.left(_BINARY["octahedral"], "2O")

    @classmethod
    def binary_icosahedral(cls) -> "RotationSpectrum":
        return cls.left(_BINARY["icosahedral"], "2I")

    @classmethod
    def binary_dihedral(cls, n: int) -> "RotationSpectrum":
        """Dicyclic group of order 4n."""
        if n < 1:
            raise DomainError("n must be positive")
        spec = [(Fraction(k, 2 * n), 1) for k in range(2 * n)] + [(Fraction(1, 4), 2 * n)]
        return cls.left(spec, f"Dic{n}")

    def times_right_cyclic(self, m: int) -> "RotationSpectrum":
        """Direct product with a cyclic group of order m acting by right multiplication.

        Only meaningful when ``self`` acts by left multiplication; the product
        element has angles ``theta + phi`` and ``theta - phi``.
        """
        if any(a != b for a, b, _ in self.elements):
            raise DomainError("times_right_cyclic needs a left-multiplication spectrum")
        out = []
        for t, _, k in self.elements:
            for j in range(m):
                phi = Fraction(j, m)
                out.append((t + phi, t - phi, k))
        return RotationSpectrum.of(out, f"{self.name}xC{m}")


def _canon_angle(a: Fraction) -> Fraction:
    a = a - (a.numerator // a.denominator)
    return min(a, 1 - a) if a else a


_F = Fraction
_BINARY = {
    "tetrahedral": [(_F(0), 1), (_F(1, 2), 1), (_F(1, 4), 6), (_F(1, 6), 8), (_F(1, 3), 8)],
    "octahedral": [(_F(0), 1), (_F(1, 2), 1), (_F(1, 4), 18), (_F(1, 6), 8), (_F(1, 3), 8),
                   (_F(1, 8), 6), (_F(3, 8), 6)],
    "icosahedral": [(_F(0), 1), (_F(1, 2), 1), (_F(1, 4), 30), (_F(1, 6), 20), (_F(1, 3), 20),
                    (_F(1, 10), 12), (_F(3, 10), 12), (_F(1, 5), 12), (_F(2, 5), 12)],
}


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Integer polynomial division by a monic divisor; coefficient lists low degree first."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    rem = num[:dd] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic(k)))
            if any(rem):
                raise ArithmeticError("cyclotomic division failed")  # pragma: no cover
    return tuple(poly)


def _phase_counts(alpha: Fraction, beta: Fraction, k: int, M: int) -> list[int]:
    """Coefficient of t^k in 1/det(1 - t g), as counts of each power of exp(2 pi i/M)."""
    counts = [0] * M
    if k < 0:
        return counts
    A = int(alpha * M)
    B = int(beta * M)
    for s1 in range(k + 1):
        s2 = k - s1
        for t1 in range(-s1, s1 + 1, 2):
            base = t1 * A
            for t2 in range(-s2, s2 + 1, 2):
                counts[(base + t2 * B) % M] += 1
    return counts


def molien_invariant_dim(G: RotationSpectrum, d: int) -> int:
    """Dimension of G-invariant harmonic polynomials of degree d, via Molien's formula.

    The degree-d coefficient of ``(1/|G|) sum_g 1/det(1 - t g)`` minus the
    degree-(d-2) one.  Each element's contribution is a sum of roots of unity;
    the total is reduced modulo the cyclotomic polynomial, where it must be an
    integer constant.
    """
    if d < 0:
        raise DomainError("degree must be non-negative")
    M = 1
    for a, b, _ in G.elements:
        M = lcm(M, a.denominator, b.denominator)
    total = [0] * M
    for a, b, k in G.elements:
        top = _phase_counts(a, b, d, M)
        low = _phase_counts(a, b, d - 2, M)
        for j in range(M):
            total[j] += k * (top[j] - low[j])
    _, rem = _poly_divmod(total, list(cyclotomic(M)))
    if any(rem[1:]):
        raise ArithmeticError("Molien sum is not rational; spectrum is not a group")
    value = Fraction(rem[0], G.order)
    if value.denominator != 1:
        raise ArithmeticError("Molien average is not an integer; spectrum is not a group")
    return int(value)


def poly_space_dim(d: int) -> int:
    """Dimension of all degree-d polynomials in four variables."""
    return comb(d + 3, 3)
