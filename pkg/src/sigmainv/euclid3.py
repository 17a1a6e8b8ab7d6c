"""The ten closed Euclidean 3-manifolds and their canonical conformal data.

Each manifold is covered by a flat 3-torus ``T^2 x S^1`` whose conformal class
is fixed by a direction ``r_can``.  For the orientable ones the class invariant
is a multiple of the torus value; the nonorientable ones carry the volume of
the optimal Euclidean Klein bottle, ``6 pi E(2 sqrt(2)/3)``, times the circle
length ``2 pi``.

Two W conventions appear in the tabulated data.  ``W_formula`` always uses
``n^2 (c^2)^(3/2) mu`` with n = 3.  ``W_printed`` follows the tabulated
values, which drop the factor ``n^2 = 9`` for the nonorientable rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .closedform import E_CONST, PI, TWO_PI, ClosedFormValue, cf
from .directions import DirectionVector
from .errors import UnknownManifoldError
from .invariants import c2_min

F = Fraction

KLEIN_VOLUME = 6 * PI * E_CONST


def _pow32(q: Fraction) -> ClosedFormValue:
    return ClosedFormValue.from_rational(q) ** F(3, 2)


@dataclass(frozen=True)
class PrintedDirection:
    """A direction as tabulated: ``sqrt(scale_sq) * (e_1, e_2, e_3)``.

    Entries may be irrational but their squares are rational, so both are kept
    through squares.
    """

    scale_sq: Fraction
    entry_squares: tuple[Fraction, ...]
    text: str

    def direction(self) -> DirectionVector:
        return DirectionVector.from_squares(self.entry_squares)

    def is_unit(self) -> bool:
        return self.scale_sq * sum(self.entry_squares) == 1


@dataclass(frozen=True)
class EuclideanManifoldRecord:
    id: str
    table: int
    orientable: bool
    rotational_group: str
    quotient_group: str
    torus_type: str
    parameter: str
    r_can: DirectionVector
    covering_multiplicity: int
    mu: ClosedFormValue
    W_formula: ClosedFormValue
    W_printed: ClosedFormValue
    c2: Fraction
    printed_r: PrintedDirection
    printed_mu: ClosedFormValue | None
    printed_mu_text: str | None
    printed_W_text: str

    @property
    def convention_gap(self) -> ClosedFormValue:
        """Ratio ``W_formula / W_printed``: 1 for orientable rows, 9 for the nonorientable ones."""
        return self.W_formula / self.W_printed


@dataclass(frozen=True)
class _Row:
    id: str
    table: int
    orientable: bool
    F: str
    gamma_hat: str
    torus: str
    parameter: str
    torus_part: tuple[Fraction, Fraction]   # squares of gamma^1 + gamma^2
    third: Fraction                          # the S^1 entry of the unnormalized direction
    multiplicity: int
    klein: bool
    printed_r: PrintedDirection
    printed_mu: ClosedFormValue | None
    printed_mu_text: str | None
    printed_W: ClosedFormValue
    printed_W_text: str


_SQ = (F(1), F(1))
_HEX = (F(1, 4), F(3, 4))
_E = E_CONST
_T = TWO_PI**3

_ROWS = (
    _Row("E1", 1, True, "1", "1", "any", "theta=0", _SQ, F(1), 1, False,
         PrintedDirection(F(1, 3), (F(1), F(1), F(1)), "(1/sqrt3)(1,1,1)"),
         None, None, cf(1, 3) * _T, "sqrt3 (2pi)^3"),
    _Row("E2", 1, True, "Z/2", "Z/2", "any", "theta=180", _SQ, F(1, 2), 1, False,
         PrintedDirection(F(4, 9), (F(1), F(1), F(1, 4)), "(2/3)(1,1,1/2)"),
         None, None, cf(1, 6) * _T, "sqrt6 (2pi)^3"),
    _Row("E3", 1, True, "Z/3", "Z/3", "hexagonal", "theta=120", _HEX, F(1, 3), 1, False,
         PrintedDirection(F(9, 10), (F(1, 4), F(3, 4), F(1, 9)), "(3/sqrt10)(1/2,sqrt3/2,1/3)"),
         None, None, cf(F(43, 108), 43) * _T, "(43 sqrt43/108) (2pi)^3"),
    _Row("E4", 1, True, "Z/4", "Z/4", "square", "theta=90", _SQ, F(1, 4), 1, False,
         PrintedDirection(F(16, 33), (F(1), F(1), F(1, 16)), "(4/sqrt33)(1,1,1/4)"),
         None, None, cf(F(9, 2), 2) * _T, "(9 sqrt2/2) (2pi)^3"),
    _Row("E5", 1, True, "Z/6", "Z/6", "hexagonal", "theta=60", _HEX, F(1, 6), 1, False,
         PrintedDirection(F(36, 37), (F(1, 4), F(3, 4), F(1, 36)), "(6/sqrt37)(1/2,sqrt3/2,1/6)"),
         None, None, cf(F(31, 27), 31) * _T, "(31 sqrt31/27) (2pi)^3"),
    _Row("E6", 2, True, "Z/2+Z/2", "Z/2*Z/2", "square", "|Gamma_hat|=2", _SQ, F(2), 2, False,
         PrintedDirection(F(1, 6), (F(1), F(1), F(4)), "(1/sqrt6)(1,1,2)"),
         F(4) / (6 * cf(1, 6)) * _T, "(4/(6 sqrt6)) (2pi)^3", F(9, 2) * _T, "(9/2) (2pi)^3"),
    _Row("E7", 3, False, "Z/2", "Z/2*Z/2", "square", "(V':V)=2", _SQ, F(1, 2), 1, True,
         PrintedDirection(F(4, 9), (F(1), F(1), F(1, 4)), "(2/3)(1,1,1/2)"),
         12 * PI**2 * _E, "12 pi^2 E", _pow32(F(3, 2)) * 12 * PI**2 * _E, "(3/2)^(3/2) 12 pi^2 E"),
    _Row("E8", 3, False, "Z/2", "Z/2*Z/2", "square", "(V':V)=4", _SQ, F(1, 4), 1, True,
         PrintedDirection(F(16, 33), (F(1), F(1), F(1, 16)), "(4/sqrt33)(1,1,1/4)"),
         12 * PI**2 * _E, "12 pi^2 E", _pow32(F(33, 8)) * 12 * PI**2 * _E, "(33/8)^(3/2) 12 pi^2 E"),
    _Row("E9", 4, False, "Z/2+Z/2", "Z/2*Z/2", "square", "l=2", _SQ, F(2), 2, True,
         PrintedDirection(F(1, 6), (F(1), F(1), F(4)), "(1/sqrt6)(1,1,2)"),
         24 * PI**2 * _E, "24 pi^2 E", _pow32(F(3, 2)) * 24 * PI**2 * _E, "(3/2)^(3/2) 24 pi^2 E"),
    _Row("E10", 4, False, "Z/2+Z/2", "Z/2*Z/2", "square", "l=4", _SQ, F(4), 2, True,
         PrintedDirection(F(1, 18), (F(1), F(1), F(16)), "(1/sqrt18)(1,1,4)"),
         24 * PI**2 * _E, "24 pi^2 E", _pow32(F(33, 8)) * 24 * PI**2 * _E, "(33/8)^(3/2) 24 pi^2 E"),
)

IDS = tuple(r.id for r in _ROWS)


def _build(row: _Row) -> EuclideanManifoldRecord:
    r = DirectionVector.from_squares(row.torus_part + (row.third**2,))
    inv_sum = r.inverse_square_sum()
    c2 = c2_min(3, inv_sum - 9)
    if row.klein:
        # Klein-bottle volume times the circle length, doubled for the l-family
        mu = row.multiplicity * KLEIN_VOLUME * TWO_PI
    else:
        mu = row.multiplicity * TWO_PI**3 * r.coordinate_product()
    W_formula = 9 * _pow32(c2) * mu
    W_printed = _pow32(c2) * mu if row.klein else W_formula
    return EuclideanManifoldRecord(
        id=row.id, table=row.table, orientable=row.orientable, rotational_group=row.F,
        quotient_group=row.gamma_hat, torus_type=row.torus, parameter=row.parameter,
        r_can=r, covering_multiplicity=row.multiplicity, mu=mu, W_formula=W_formula,
        W_printed=W_printed, c2=c2, printed_r=row.printed_r, printed_mu=row.printed_mu,
        printed_mu_text=row.printed_mu_text, printed_W_text=row.printed_W_text)


@lru_cache(maxsize=None)
def _registry() -> dict[str, EuclideanManifoldRecord]:
    return {row.id: _build(row) for row in _ROWS}


def _row(id: str) -> _Row:
    return next(r for r in _ROWS if r.id == id)


def euclid_record(id: str) -> EuclideanManifoldRecord:
    try:
        return _registry()[id.upper()]
    except (KeyError, AttributeError):
        raise UnknownManifoldError(f"unknown Euclidean manifold {id!r}; expected one of {', '.join(IDS)}") from None


def torus_W(r: DirectionVector) -> ClosedFormValue:
    """Torus W in three dimensions, ``(1/3) (sum 1/r_i^2)^(3/2) (2 pi)^3 prod r_i``."""
    return F(1, 3) * _pow32(r.inverse_square_sum()) * TWO_PI**3 * r.coordinate_product()


@dataclass(frozen=True)
class Cell:
    record: str
    column: str
    printed: str
    expected: object
    computed: object

    @property
    def matches(self) -> bool:
        return self.expected == self.computed


def table_cells(table: int | None = None) -> list[Cell]:
    """Every closed-form cell of the tables, paired with its recomputation.

    Direction cells compare the printed direction's squares (after checking it
    is a unit vector) with the canonical direction; volume and W cells compare
    closed forms structurally.
    """
    cells = []
    for row in _ROWS:
        if table is not None and row.table != table:
            continue
        rec = euclid_record(row.id)
        pr = row.printed_r
        printed_sq = pr.direction().normalized_squares() if pr.is_unit() else None
        cells.append(Cell(row.id, "r_can", pr.text, printed_sq, rec.r_can.normalized_squares()))
        if row.printed_mu is not None:
            cells.append(Cell(row.id, "mu", row.printed_mu_text, row.printed_mu, rec.mu))
        cells.append(Cell(row.id, "W", row.printed_W_text, row.printed_W, rec.W_printed))
    return cells


@dataclass(frozen=True)
class EuclidTable:
    number: int
    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]


_TITLES = {
    1: "orientable, trivial or cyclic rotational group",
    2: "orientable, noncyclic rotational group",
    3: "nonorientable, cyclic rotational group",
    4: "nonorientable, noncyclic rotational group",
}


def euclid_tables() -> list[EuclidTable]:
    cols = ("id", "F_M", "Gamma_hat", "torus", "parameter", "r_can", "c2", "mu", "W_formula", "W_printed")
    out = []
    for t in (1, 2, 3, 4):
        rows = []
        for row in _ROWS:
            if row.table != t:
                continue
            rec = euclid_record(row.id)
            rows.append((rec.id, rec.rotational_group, rec.quotient_group, rec.torus_type, rec.parameter,
                         row.printed_r.text, str(rec.c2), rec.mu.render(), rec.W_formula.render(),
                         rec.W_printed.render()))
        out.append(EuclidTable(t, _TITLES[t], cols, tuple(rows)))
    return out


def euclid_diffeo(id_a: str, id_b: str) -> bool:
    """Diffeomorphism test by equality of the canonical class invariant."""
    return euclid_record(id_a).W_printed == euclid_record(id_b).W_printed
