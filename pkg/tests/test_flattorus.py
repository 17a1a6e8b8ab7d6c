import math
import random

import pytest

from sigmainv import flattorus
from sigmainv.closedform import PI, TWO_PI, cf
from sigmainv.directions import DirectionVector
from sigmainv.errors import DegenerateError, DomainError
from sigmainv.report import corrupted_pair


def float_W(v):
    n = len(v)
    t = sum(x * x for x in v)
    r = [abs(x) / math.sqrt(t) for x in v]
    return n ** (2 - n) * sum(1 / x**2 for x in r) ** (n / 2) * (2 * math.pi) ** n * math.prod(r)


def test_canonical_values():
    assert flattorus.canonical_torus(3).W == cf(1, 3) * TWO_PI**3
    assert flattorus.canonical_torus(4).W == 16 * PI**4
    assert flattorus.canonical_torus(1).W == TWO_PI
    with pytest.raises(DomainError):
        flattorus.canonical_torus(0)


def test_direction_rejects_zero_entries():
    with pytest.raises(DegenerateError):
        DirectionVector.from_integers([1, 0, 2])


def test_invariants_match_float_formula():
    rng = random.Random(11)
    for _ in range(300):
        v = [rng.choice((-1, 1)) * rng.randint(1, 30) for _ in range(rng.randint(2, 7))]
        t = flattorus.torus_invariants(DirectionVector.from_integers(v))
        assert math.isclose(float(t.W), float_W(v), rel_tol=1e-10)
        assert t.W == flattorus.w_from_c2(t) == t.D


def test_canonical_is_minimal_on_samples():
    rng = random.Random(5)
    for n in (2, 3, 4):
        base = flattorus.canonical_torus(n).W
        for _ in range(100):
            v = [rng.randint(1, 20) for _ in range(n)]
            assert flattorus.torus_invariants(DirectionVector.from_integers(v)).W >= base


def test_cs_ratio():
    r1 = DirectionVector.from_integers((48, 56, -76, 28))
    r2 = DirectionVector.from_integers((36, 92, -16, -40))
    assert abs(flattorus.cs_ratio(r1) - 27.7240) < 5e-4
    assert abs(flattorus.cs_ratio(r2) - 62.2916) < 5e-4
    assert flattorus.cs_ratio_exact(r1) * PI**4 == flattorus.torus_invariants(r1).W
    with pytest.raises(DomainError):
        flattorus.cs_ratio(DirectionVector.from_integers((1, 1, 1)))


def test_report_on_builtin_pair():
    rep = flattorus.conway_sloane_report()
    assert rep.passed
    assert [c.name for c in rep.claims if c.flagged] == ["ratio_baseline"]
    assert rep.theta1 == rep.theta2


def test_report_detects_corruption():
    rep = flattorus.conway_sloane_report(corrupted_pair())
    assert not rep.claim("volumes").passed
    assert not rep.claim("change_of_basis").passed


def test_summary_strings():
    s = flattorus.torus_summary(DirectionVector.from_integers((1, 1, 1, 1)))
    assert s["W"] == "16*pi^4" and s["W_over_pi4"] == "16.00000000"


def test_fourth_generator_of_second_basis_lies_in_first_lattice():
    from sigmainv.lattice import IntegerLattice
    g4 = flattorus.linalg_columns(flattorus.CONWAY_SLOANE.S2)[3]
    s1 = IntegerLattice.from_rows(flattorus.CONWAY_SLOANE.S1)
    assert s1.coordinates(g4) == [-1, 1, -1, 0]
    assert IntegerLattice.from_rows(flattorus.CONWAY_SLOANE.B1).contains(g4)
