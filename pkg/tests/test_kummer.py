import math
import random
from fractions import Fraction

import mpmath
import pytest

from oracles import det_sympy
from sigmainv import kummer
from sigmainv.closedform import PI
from sigmainv.errors import ClassNotInConeError, DegenerateError, DomainError, ShapeError
from sigmainv.kummer import KummerLattice


def test_square_lattice():
    sq = KummerLattice.square()
    assert sq.det_gamma == 1 and sq.weight_norm_sq == 16
    assert kummer.distinct_classes(sq) == 16
    assert len(kummer.singular_points(sq)) == 16


def test_s_lambda_closed_form():
    s = kummer.s_lambda(KummerLattice.square(), 30)
    with mpmath.workdps(30):
        want = mpmath.sqrt((8 * mpmath.pi**4 - 2 * mpmath.pi**2) / 16)
        assert abs(s - want) < mpmath.mpf(10) ** -25


def test_class_not_in_cone():
    with pytest.raises(ClassNotInConeError):
        kummer.s_lambda(KummerLattice.with_det(Fraction(1, 100)))


def test_volume():
    sq = KummerLattice.square()
    assert kummer.kummer_volume(sq, 1) == 2 * PI**2
    v = kummer.kummer_volume(sq, Fraction(1, 2))
    assert math.isclose(float(v), 2 * math.pi**2 + 6 * math.pi**4, rel_tol=1e-12)
    assert math.isclose(float(kummer.kummer_volume(sq, 0.5)), float(v), rel_tol=1e-12)
    with pytest.raises(DomainError):
        kummer.kummer_volume(sq, 0)


def test_square_check():
    rep = kummer.square_kummer_check()
    assert rep.passed
    assert rep.W == rep.D == 32 * PI**2 and rep.scalar == 0


def test_random_lattices_have_sixteen_points():
    rng = random.Random(42)
    for _ in range(50):
        L = kummer.random_lattice(rng)
        assert kummer.distinct_classes(L) == 16
        assert L.det_gamma == det_sympy([list(r) for r in zip(*L.generators)])


def test_validation():
    with pytest.raises(ShapeError):
        KummerLattice.of([[1, 0, 0, 0]])
    with pytest.raises(DegenerateError):
        KummerLattice.of([[1, 0, 0, 0], [2, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(DomainError):
        KummerLattice.square([0] + [1] * 15)
