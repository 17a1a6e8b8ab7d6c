import math
from fractions import Fraction

import pytest

from sigmainv import euclid3
from sigmainv.closedform import E_CONST, PI, TWO_PI, ClosedFormValue, cf, elliptic_E, ELLIPTIC_MODULUS
from sigmainv.errors import UnknownManifoldError

E = E_CONST


def pow32(q):
    return ClosedFormValue.from_rational(Fraction(q)) ** Fraction(3, 2)


def test_worked_examples():
    e3 = euclid3.euclid_record("E3")
    assert e3.W_printed == cf(Fraction(43, 108), 43) * TWO_PI**3
    assert [str(s) for s in e3.r_can.normalized_squares()] == ["9/40", "27/40", "1/10"]
    e6 = euclid3.euclid_record("e6")
    assert e6.mu == Fraction(4, 6) / cf(1, 6) * TWO_PI**3
    assert e6.W_printed == Fraction(9, 2) * TWO_PI**3
    e9 = euclid3.euclid_record("E9")
    assert e9.mu == 24 * PI**2 * E
    assert e9.W_printed == pow32(Fraction(3, 2)) * 24 * PI**2 * E


def test_more_printed_entries():
    by_w = {r.W_printed: r.id for r in map(euclid3.euclid_record, euclid3.IDS)}
    assert cf(Fraction(31, 27), 31) * TWO_PI**3 in by_w
    assert pow32(Fraction(33, 8)) * 12 * PI**2 * E in by_w
    assert pow32(Fraction(33, 8)) * 24 * PI**2 * E in by_w
    assert pow32(Fraction(3, 2)) * 12 * PI**2 * E in by_w


def test_orientable_rows_follow_torus_formula():
    for i in euclid3.IDS[:6]:
        rec = euclid3.euclid_record(i)
        assert rec.W_formula == rec.covering_multiplicity * euclid3.torus_W(rec.r_can)


def test_float_oracle_for_orientable_W():
    for i in euclid3.IDS[:6]:
        rec = euclid3.euclid_record(i)
        r = [math.sqrt(float(s)) for s in rec.r_can.normalized_squares()]
        w = rec.covering_multiplicity * (1 / 3) * sum(1 / x**2 for x in r) ** 1.5 * (2 * math.pi) ** 3 * math.prod(r)
        assert math.isclose(float(rec.W_printed), w, rel_tol=1e-12)


def test_klein_volume_decimal():
    want = 6 * math.pi * float(elliptic_E(ELLIPTIC_MODULUS))
    assert math.isclose(float(euclid3.KLEIN_VOLUME), want, rel_tol=1e-12)


def test_all_cells_match_and_count():
    cells = euclid3.table_cells()
    assert len(cells) == 25
    assert all(c.matches for c in cells), [c for c in cells if not c.matches]
    assert sum(len(euclid3.table_cells(t)) for t in (1, 2, 3, 4)) == 25


def test_c2_and_convention_gap():
    recs = [euclid3.euclid_record(i) for i in euclid3.IDS]
    assert {r.c2 for r in recs if not r.orientable} == {Fraction(3, 2), Fraction(33, 8)}
    assert [r.convention_gap for r in recs] == [1] * 6 + [9] * 4
    assert sum(r.orientable for r in recs) == 6


def test_diffeo():
    assert euclid3.euclid_diffeo("E2", "E2")
    assert not euclid3.euclid_diffeo("E1", "E2")
    assert not euclid3.euclid_diffeo("E6", "E9")
    assert len({euclid3.euclid_record(i).W_printed for i in euclid3.IDS}) == 10


def test_unknown_id():
    with pytest.raises(UnknownManifoldError):
        euclid3.euclid_record("E11")


def test_tables_render_every_row():
    tables = euclid3.euclid_tables()
    assert [t.number for t in tables] == [1, 2, 3, 4]
    assert sum(len(t.rows) for t in tables) == 10
