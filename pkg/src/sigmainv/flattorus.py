"""Conformal invariants of flat product tori and the Conway-Sloane pair.

A unit direction ``r`` fixes the flat torus ``S^1(r_1) x ... x S^1(r_n)``
sitting linearly in ``S^(2n-1)``.  Its extrinsic data are

    |H|^2     = sum 1/r_i^2 - n^2
    |alpha|^2 = sum 1/r_i^2 - n
    vol       = (2 pi)^n prod r_i

and the class invariant is ``W = D = n^(2-n) (sum 1/r_i^2)^(n/2) vol``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import lattice as lat
from .closedform import TWO_PI, ClosedFormValue, cf_eval
from .directions import DirectionVector
from .errors import DomainError
from .invariants import c2_min

__all__ = [
    "DirectionVector", "TorusInvariants", "torus_invariants", "canonical_torus",
    "cs_ratio", "cs_ratio_exact", "conway_sloane_report", "CONWAY_SLOANE",
]


@dataclass(frozen=True)
class TorusInvariants:
    n: int
    mean_sq: Fraction
    second_sq: Fraction
    volume: ClosedFormValue
    c2: Fraction
    W: ClosedFormValue
    D: ClosedFormValue


def torus_invariants(r: DirectionVector) -> TorusInvariants:
    n = r.n
    if n < 2:
        raise DomainError("torus_invariants needs n >= 2; see canonical_torus(1)")
    inv_sum = r.inverse_square_sum()
    mean_sq = inv_sum - n * n
    second_sq = mean_sq + n * n - n
    volume = TWO_PI**n * r.coordinate_product()
    W = Fraction(1, n ** (n - 2)) * ClosedFormValue.from_rational(inv_sum) ** Fraction(n, 2) * volume
    return TorusInvariants(n, mean_sq, second_sq, volume, c2_min(n, mean_sq), W, W)


def w_from_c2(t: TorusInvariants) -> ClosedFormValue:
    """The same W through the minimal-scaling factor: ``n^2 (c^2)^(n/2) vol``."""
    return t.n**2 * ClosedFormValue.from_rational(t.c2) ** Fraction(t.n, 2) * t.volume


def canonical_torus(n: int) -> TorusInvariants:
    """The square torus ``r = (1, ..., 1)/sqrt(n)``; n = 1 gives the circle convention W = D = 2 pi."""
    if n < 1:
        raise DomainError("dimension must be positive")
    if n == 1:
        z = Fraction(0)
        return TorusInvariants(1, z, z, TWO_PI, Fraction(1), TWO_PI, TWO_PI)
    return torus_invariants(DirectionVector.from_integers([1] * n))


def cs_ratio_exact(r: DirectionVector) -> ClosedFormValue:
    """``(sum 1/r_i^2)^2 prod r_i``, which equals ``W / pi^4`` for a 4-torus."""
    if r.n != 4:
        raise DomainError("cs_ratio is defined for 4-dimensional directions")
    return ClosedFormValue.from_rational(r.inverse_square_sum() ** 2) * r.coordinate_product()


def cs_ratio(r: DirectionVector) -> float:
    return float(cs_ratio_exact(r))


# -- the Conway-Sloane isospectral pair ---------------------------------------

@dataclass(frozen=True)
class IsospectralPair:
    B1: tuple
    B2: tuple
    S1: tuple
    S2: tuple
    C1: tuple
    C2: tuple
    volume: int = 3983616
    norms1: tuple = (576, 2352, 3552, 3888)
    norms2: tuple = (576, 2352, 3552, 3984)
    direction1: tuple = (48, 56, -76, 28)
    direction2: tuple = (36, 92, -16, -40)
    sq_len1: int = 12000
    sq_len2: int = 11616
    ratio1: float = 27.7240
    ratio2: float = 62.2916
    theta_bound: int = 4000


def _rows(*rows):
    return tuple(tuple(r) for r in rows)


CONWAY_SLOANE = IsospectralPair(
    B1=_rows((28, 36, 192, 156), (-16, 52, 228, 108), (52, 64, 108, 228), (-12, -76, -156, -192)),
    B2=_rows((28, 108, 64, 156), (-16, 156, 76, 108), (52, 192, 36, 228), (-12, -228, -52, -192)),
    S1=_rows((12, 28, 36, -28), (-12, 36, 16, 16), (-12, -4, -8, -52), (-12, -16, 44, 12)),
    S2=_rows((12, 36, 8, -20), (-12, 28, 44, 32), (-12, 16, -36, 16), (-12, 4, 16, -48)),
    C1=_rows((-9, -2, 6, -1), (-9, -2, 4, 0), (-1, 0, 1, 0), (5, 1, -3, 0)),
    C2=_rows((-9, 4, 3, 1), (-3, 1, 1, 1), (-3, 2, 2, 0), (5, -2, -2, -1)),
)

RATIO_TOLERANCE = 5e-4


@dataclass
class Claim:
    name: str
    passed: bool
    expected: object
    computed: object
    flagged: bool = False
    note: str = ""


@dataclass
class ConwaySloaneReport:
    claims: list[Claim] = field(default_factory=list)
    theta1: Optional[dict] = None
    theta2: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def claim(self, name: str) -> Claim:
        return next(c for c in self.claims if c.name == name)


def signed_permutation_equivalent(g1, g2) -> bool:
    """True iff ``g2 = P^T D g1 D P`` for some permutation P and signs D."""
    from itertools import permutations, product
    n = len(g1)
    for perm in permutations(range(n)):
        if any(g1[perm[i]][perm[i]] != g2[i][i] for i in range(n)):
            continue
        for signs in product((1, -1), repeat=n - 1):
            s = (1,) + signs
            if all(s[i] * s[j] * g1[perm[i]][perm[j]] == g2[i][j]
                   for i in range(n) for j in range(n)):
                return True
    return False


def conway_sloane_report(data: IsospectralPair = CONWAY_SLOANE, budget: int = 10**7) -> ConwaySloaneReport:
    """Re-derive every printed claim about the isospectral pair of flat 4-tori."""
    rep = ConwaySloaneReport()
    L1 = lat.IntegerLattice.from_rows(data.B1)
    L2 = lat.IntegerLattice.from_rows(data.B2)

    v1, v2 = lat.lattice_volume(L1), lat.lattice_volume(L2)
    rep.claims.append(Claim("volumes", v1 == v2 == (data.volume, 1),
                            (data.volume, data.volume), (v1, v2)))

    sb1, sb2 = lat.shortest_basis(L1, budget), lat.shortest_basis(L2, budget)
    rep.claims.append(Claim("shortest_norms", (sb1.squared_norms, sb2.squared_norms)
                            == (data.norms1, data.norms2),
                            (data.norms1, data.norms2), (sb1.squared_norms, sb2.squared_norms)))

    def gram_of(rows):
        cols = list(zip(*rows))
        return [[sum(a * b for a, b in zip(u, v)) for v in cols] for u in cols]

    ok_change = (lat.basis_change_verify(data.B1, data.C1, data.S1)
                 and lat.basis_change_verify(data.B2, data.C2, data.S2)
                 and lat.basis_change_verify(data.B1, sb1.change_of_basis(), sb1.matrix())
                 and lat.basis_change_verify(data.B2, sb2.change_of_basis(), sb2.matrix()))
    rep.claims.append(Claim("change_of_basis", ok_change, True, ok_change))

    same_gram = (signed_permutation_equivalent(gram_of(data.S1), gram_of(sb1.matrix()))
                 and signed_permutation_equivalent(gram_of(data.S2), gram_of(sb2.matrix())))
    rep.claims.append(Claim("printed_bases_are_shortest", same_gram, True, same_gram))

    th1 = lat.theta_series(L1, data.theta_bound, budget)
    th2 = lat.theta_series(L2, data.theta_bound, budget)
    rep.theta1, rep.theta2 = th1, th2
    rep.claims.append(Claim("theta_equal", th1 == th2, "equal", "equal" if th1 == th2 else "differ"))

    d1 = lat.conformal_direction(linalg_columns(data.S1))
    d2 = lat.conformal_direction(linalg_columns(data.S2))
    got = ((d1.vector, d1.sq_len), (d2.vector, d2.sq_len))
    want = ((data.direction1, data.sq_len1), (data.direction2, data.sq_len2))
    rep.claims.append(Claim("directions", got == want, want, got))

    distinct = d1.direction.sorted_squares() != d2.direction.sorted_squares()
    rep.claims.append(Claim("not_isometric", distinct, True, distinct,
                            note="directions differ up to signed permutation"))

    r1, r2 = cs_ratio(d1.direction), cs_ratio(d2.direction)
    ok_ratio = abs(r1 - data.ratio1) <= RATIO_TOLERANCE and abs(r2 - data.ratio2) <= RATIO_TOLERANCE
    rep.claims.append(Claim("ratios", ok_ratio, (data.ratio1, data.ratio2), (r1, r2)))

    base = canonical_torus(4).W
    rel = (r1 / 16, r2 / 16)
    rep.claims.append(Claim(
        "ratio_baseline", True, "ratios relative to W(canonical) = 16 pi^4",
        {"W/pi^4": (r1, r2), "W/(16 pi^4)": rel, "baseline": base.render()},
        flagged=True,
        note="printed ratios equal W/pi^4; against the stated 16 pi^4 baseline they are 16 times smaller"))
    return rep


def linalg_columns(rows):
    return [tuple(c) for c in zip(*rows)]


def torus_summary(r: DirectionVector, digits: int = 10) -> dict:
    t = torus_invariants(r)
    out = {
        "n": t.n,
        "direction_squares": [str(s) for s in r.normalized_squares()],
        "mean_sq": str(t.mean_sq),
        "second_sq": str(t.second_sq),
        "c2": str(t.c2),
        "volume": t.volume.render(),
        "W": t.W.render(),
        "D": t.D.render(),
        "W_decimal": str(cf_eval(t.W, digits)),
    }
    if t.n == 4:
        out["W_over_pi4"] = str(cf_eval(cs_ratio_exact(r), digits))
    return out
