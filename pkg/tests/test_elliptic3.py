from fractions import Fraction
from math import gcd

import pytest
import sympy

from oracles import X, Y, Z, W, classical_lens, pullback_is_round, rational_sphere_points, sympy_laplacian
from sigmainv import elliptic3 as ell
from sigmainv.closedform import PI, ClosedFormValue
from sigmainv.errors import DomainError, InvalidDescriptorError
from sigmainv.invariants import aubin_bound
from sigmainv.polynomial import real_variables

S3 = 6 * (2 * PI**2) ** Fraction(2, 3)


def test_sigma_values():
    assert ell.SIGMA_S3 == S3 == aubin_bound(3)
    assert ell.elliptic_invariants(2).lam == S3 / ClosedFormValue.from_rational(2) ** Fraction(2, 3)
    for p in range(1, 30):
        assert ell.sigma_of_order(p) == S3 / ClosedFormValue.from_rational(p) ** Fraction(2, 3)


def test_sphere_data():
    inv = ell.elliptic_invariants(1)
    assert inv.volume == 2 * PI**2 and inv.scalar == 6 and inv.alpha_sq == 0
    assert inv.W == 18 * PI**2 and inv.D == 6 * PI**2


@pytest.mark.parametrize("order", [1, 2, 3, 8, 24, 120, 97])
def test_gauss_identity_and_wd(order):
    inv = ell.elliptic_invariants(order)
    assert inv.scalar + inv.alpha_sq == 6
    assert inv.W - inv.D == inv.scalar * inv.volume
    assert inv.lam == inv.scalar * inv.volume ** Fraction(2, 3)


def test_aubin_check():
    for order in range(1, 60):
        inv, y = ell.yamabe_check(order)
        assert y.within_bound
        assert (y.lam == y.aubin) == (order == 1)
        assert float(y.lam) <= float(y.aubin) * (1 + 1e-10)


def test_descriptors():
    b = ell.EllipticDescriptor("b", h1_kind="icosahedral", h2_order=7)
    rep = ell.sigma_elliptic(b)
    assert rep.pi1_order == 840 and rep.forms_agree
    assert ell.EllipticDescriptor("c", m=3).pi1_order == 72
    assert ell.EllipticDescriptor("d", n=4, m=3).pi1_order == 48
    assert ell.EllipticDescriptor("b", h1_kind="dihedral", h1_order=8, h2_order=3).pi1_order == 48
    for bad in (dict(case="b", h1_kind="icosahedral", h2_order=5), dict(case="c", m=2),
                dict(case="d", n=3, m=1), dict(case="a", p=6, q=2), dict(case="e")):
        with pytest.raises(InvalidDescriptorError):
            ell.EllipticDescriptor(**bad)


def test_canonical_q():
    assert ell.canonical_q(7, 6) == 1 and ell.canonical_q(7, 4) == 2
    with pytest.raises(DomainError):
        ell.canonical_q(8, 2)


@pytest.mark.parametrize("args,verdict,dims", [((7, 1, 2), False, (16, 10)), ((5, 1, 2), False, (12, 8)),
                                               ((7, 2, 3), True, (10, 10))])
def test_lens_examples(args, verdict, dims):
    r = ell.lens_diffeo(*args)
    assert (r.verdict, r.dimension_witness) == (verdict, dims)
    assert r.subspace_equal_after_normalization == verdict


def test_lens_diffeo_exhaustive_against_oracle():
    for p in range(1, 13):
        units = [q for q in range(p) if gcd(p, q) == 1]
        for q in units:
            for q2 in units:
                r = ell.lens_diffeo(p, q, q2)
                want = classical_lens(p, q, q2)
                assert r.verdict == want == ell.classical_lens_criterion(p, q, q2)
                assert r.subspace_equal_after_normalization == want


# -- explicit maps -----------------------------------------------------------------

def veronese():
    x, y, z, w = real_variables()
    v = (x, y, z, w)
    comps = [ell.EmbeddingComponent(v[i] * v[j], Fraction(8, 3)) for i in range(4) for j in range(i + 1, 4)]
    a, b, c, d = (t * t for t in v)
    for u in (a + b - c - d, a - b + c - d, a - b - c + d):
        comps.append(ell.EmbeddingComponent(u, Fraction(1, 3)))
    return comps


def test_positive_control_veronese_is_round():
    for symbolic in (False, True):
        rep = ell.verify_min_embedding(veronese(), 2, 1, symbolic=symbolic)
        assert rep.passed and rep.constant == Fraction(8, 3), rep.failures


def test_identity_map_is_round():
    rep = ell.verify_min_embedding(list(real_variables()), 1, 0, symbolic=True)
    assert rep.passed and rep.constant == 1


def test_l31_algebraic_properties():
    rep = ell.verify_l31()
    assert rep.harmonic and rep.invariant and rep.sum_of_squares
    assert rep.mean_constant == 5 == rep.expected_constant


def test_l31_not_round_confirmed_by_sympy():
    comps, _ = ell.l31_map()
    exprs = []
    for c in comps:
        e = sum(coef * X**m[0] * Y**m[1] * Z**m[2] * W**m[3] for m, coef in c.poly.terms.items())
        exprs.append(sympy.nsimplify(e))
        assert sympy_laplacian(exprs[-1]) == 0
    scales = [c.scale_sq for c in comps]
    assert sympy.expand(sum(s * e**2 for s, e in zip(scales, exprs)) - (X**2 + Y**2 + Z**2 + W**2) ** 3) == 0
    results = [pullback_is_round(exprs, scales, P) for P in rational_sphere_points(5)]
    assert not all(r for r, _ in results)
    rep = ell.verify_l31()
    assert not rep.round and rep.failures


def test_l31_orientation_matters():
    comps, _ = ell.l31_map()
    rep = ell.verify_min_embedding(comps, 3, 1, orientation=1)
    assert not rep.invariant


def test_dropping_a_component_breaks_sum_of_squares():
    comps, orient = ell.l31_map()
    rep = ell.verify_min_embedding(comps[:-1], 3, 1, orient)
    assert not rep.sum_of_squares and rep.residual


def test_pythagorean_points_lie_on_sphere():
    pts = ell.pythagorean_points(20)
    assert len(pts) == 20 and len(set(pts)) == 20
    assert all(sum(c * c for c in P) == 1 for P in pts)
