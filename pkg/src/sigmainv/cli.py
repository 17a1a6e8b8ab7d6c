"""Command-line front end: ``sigmainv <subcommand> ...``.

Exit codes: 0 success, 1 a graded claim failed, 2 usage or input error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import ast
import json
import operator
import sys
from fractions import Fraction
from typing import Sequence

import mpmath

from . import elliptic3 as ell
from . import euclid3, flattorus, harmonics, kummer, lattice, report
from .closedform import cf_eval, elliptic_E
from .directions import DirectionVector
from .errors import EnumerationBudgetError, SigmaInvError
from .invariants import aubin_bound, sphere_volume

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- rendering -------------------------------------------------------------------

def _table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _kv(doc, indent: str = "") -> str:
    lines = []
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_kv(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            for item in v:
                lines.append(indent + "  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def _emit(args, doc, text: str | None = None) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(text if text is not None else _kv(doc))


def _dec(v, args) -> str:
    return str(cf_eval(v, args.precision))


# -- argument helpers ------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _weights(text: str) -> list[Fraction]:
    if "x" in text and "," not in text:
        value, _, count = text.partition("x")
        return [Fraction(value)] * int(count)
    return [Fraction(x) for x in text.split(",")]


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def _expression(text: str):
    """Evaluate a small arithmetic expression (numbers, pi, sqrt) with mpmath."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return mpmath.mpf(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Name) and node.id == "pi":
            return +mpmath.pi
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt"
                and len(node.args) == 1):
            return mpmath.sqrt(ev(node.args[0]))
        raise UsageError(f"unsupported expression {text!r}")

    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError:
        raise UsageError(f"cannot parse {text!r}")
    with mpmath.workdps(40):
        return ev(tree)


# -- subcommands -----------------------------------------------------------------

def cmd_report(args) -> int:
    pair = report.corrupted_pair() if args.negative_control else flattorus.CONWAY_SLOANE
    try:
        rep = report.run_report(args.select, args.precision, pair)
    except ValueError as e:
        raise UsageError(str(e))
    rows = [(c.status.upper(), c.id, c.locator, c.expected, c.computed) for c in rep.claims]
    s = rep.summary
    text = (_table(rows, ("status", "id", "locator", "expected", "computed"))
            + f"\n\n{s['total']} claims: {s['pass']} pass, {s['fail']} fail, {s['flagged']} flagged")
    _emit(args, rep.to_dict(), text)
    return rep.exit_status


def _load_lattices(args):
    """(name, lattice, reference shortest basis rows or None)."""
    if args.file:
        try:
            with open(args.file) as fh:
                return [(args.file, lattice.IntegerLattice.from_json(fh.read()), None)]
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e.strerror}")
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise UsageError(f"malformed lattice file {args.file}: {e}")
    pair = flattorus.CONWAY_SLOANE
    return [("L1", lattice.IntegerLattice.from_rows(pair.B1), pair.S1),
            ("L2", lattice.IntegerLattice.from_rows(pair.B2), pair.S2)]


def cmd_lattice(args) -> int:
    out = {}
    for name, L, ref in _load_lattices(args):
        vol, sign = lattice.lattice_volume(L)
        doc = {"rank": L.rank, "volume": vol, "orientation": "+" if sign > 0 else "-"}
        if args.shortest:
            sb = lattice.shortest_basis(L, args.budget)
            doc["shortest_norms"] = list(sb.squared_norms)
            doc["shortest_columns"] = [list(c) for c in sb.columns]
            cd = lattice.conformal_direction(sb)
            doc["direction"] = list(cd.vector)
            doc["direction_sq_len"] = cd.sq_len
            if ref is not None:
                rd = lattice.conformal_direction(flattorus.linalg_columns(ref))
                doc["reference_direction"] = list(rd.vector)
                doc["reference_direction_sq_len"] = rd.sq_len
        if args.theta:
            th = lattice.theta_series(L, args.theta, args.budget)
            doc["theta"] = {str(k): v for k, v in sorted(th.items()) if v}
        out[name] = doc
    _emit(args, out)
    return EXIT_OK


def cmd_torus(args) -> int:
    if args.canonical:
        t = flattorus.canonical_torus(args.canonical)
        doc = {"n": t.n, "W": t.W.render(), "D": t.D.render(), "W_decimal": _dec(t.W, args)}
    elif args.direction:
        r = DirectionVector.from_integers(_int_list(args.direction))
        doc = flattorus.torus_summary(r, args.precision)
    else:
        raise UsageError("torus needs --direction or --canonical")
    _emit(args, doc)
    return EXIT_OK


def _record_doc(rec, args) -> dict:
    return {"id": rec.id, "table": rec.table, "orientable": rec.orientable,
            "rotational_group": rec.rotational_group, "quotient_group": rec.quotient_group,
            "torus_type": rec.torus_type, "parameter": rec.parameter,
            "r_can_squares": [str(s) for s in rec.r_can.normalized_squares()],
            "covering_multiplicity": rec.covering_multiplicity, "c2": str(rec.c2),
            "mu": rec.mu.render(), "W_formula": rec.W_formula.render(),
            "W_printed": rec.W_printed.render(), "W_printed_decimal": _dec(rec.W_printed, args)}


def cmd_euclid3(args) -> int:
    if args.diffeo:
        a, b = args.diffeo
        same = euclid3.euclid_diffeo(a, b)
        _emit(args, {"a": a.upper(), "b": b.upper(), "diffeomorphic": same})
        return EXIT_OK
    if args.id:
        _emit(args, _record_doc(euclid3.euclid_record(args.id), args))
        return EXIT_OK
    tables = euclid3.euclid_tables()
    if args.table:
        if args.table not in (1, 2, 3, 4):
            raise UsageError("--table must be 1, 2, 3 or 4")
        tables = [t for t in tables if t.number == args.table]
    doc = [{"table": t.number, "title": t.title, "rows": [dict(zip(t.columns, r)) for r in t.rows]}
           for t in tables]
    text = "\n\n".join(f"Table {t.number}: {t.title}\n" + _table(t.rows, t.columns) for t in tables)
    _emit(args, {"tables": doc}, text)
    return EXIT_OK


def cmd_lens(args) -> int:
    d = args.degree if args.degree is not None else args.p
    space = harmonics.lens_invariant_space(args.p, args.q, d)
    doc = {"p": args.p, "q": args.q, "degree": d, "dimension": space.dimension,
           "ambient_dimension": harmonics.harm_space_dim(d),
           "molien_dimension": harmonics.molien_invariant_dim(harmonics.RotationSpectrum.cyclic(args.p, args.q), d)}
    if args.basis:
        doc["basis"] = [b.to_json() for b in space.basis]
    if args.format == "json":
        _emit(args, doc)
    else:
        lines = [f"{k}: {v}" for k, v in doc.items() if k != "basis"]
        for b in space.basis if args.basis else ():
            lines.append("  " + b.poly.render(("z1", "zb1", "z2", "zb2")))
        print("\n".join(lines))
    return EXIT_OK


def _sigma_doc(rep: ell.SigmaReport, args) -> dict:
    inv = ell.elliptic_invariants(rep.pi1_order)
    doc = {"case": rep.descriptor.case, "pi1_order": rep.pi1_order, "sigma": rep.sigma.render(),
           "sigma_decimal": _dec(rep.sigma, args), "forms_agree": rep.forms_agree,
           "scalar": inv.scalar.render(), "alpha_sq": inv.alpha_sq.render(),
           "volume": inv.volume.render(), "W": inv.W.render(), "D": inv.D.render()}
    return doc


def cmd_elliptic(args) -> int:
    if args.verify_l31:
        rep = ell.verify_l31(args.probes, args.symbolic)
        doc = {"degree": rep.degree, "p": rep.p, "q": rep.q, "harmonic": rep.harmonic,
               "invariant": rep.invariant, "sum_of_squares": rep.sum_of_squares, "round": rep.round,
               "constant": None if rep.constant is None else str(rep.constant),
               "mean_constant": None if rep.mean_constant is None else str(rep.mean_constant),
               "expected_constant": str(rep.expected_constant), "probes": rep.probes,
               "failures": list(rep.failures), "passed": rep.passed}
        _emit(args, doc)
        return EXIT_OK if rep.passed else EXIT_FAIL
    if args.lens:
        vals = _int_list(args.lens)
        if len(vals) == 3:
            r = ell.lens_diffeo(*vals)
            doc = {"p": r.p, "q": r.q, "q_prime": r.q_prime, "diffeomorphic": r.verdict,
                   "dimensions": list(r.dimension_witness),
                   "subspaces_equal_after_normalization": r.subspace_equal_after_normalization,
                   "canonical_q": list(r.canonical)}
            _emit(args, doc)
            return EXIT_OK
        if len(vals) != 2:
            raise UsageError("--lens takes p,q or p,q,q'")
        p, q = vals
        doc = _sigma_doc(ell.sigma_elliptic(ell.EllipticDescriptor("a", p=p, q=q % p if p > 1 else 0)), args)
        doc["canonical_q"] = ell.canonical_q(p, q) if p > 1 else 0
        _emit(args, doc)
        return EXIT_OK
    if args.case:
        h1_kind, h1_order = "", 0
        if args.h1:
            if args.h1.startswith("dihedral"):
                h1_kind, h1_order = "dihedral", int(args.h1.partition(":")[2] or 0)
            else:
                h1_kind = args.h1
        desc = ell.EllipticDescriptor(args.case, p=args.p or 1, q=args.q or 0, h1_kind=h1_kind,
                                      h1_order=h1_order, h2_order=args.h2, m=args.m, n=args.n)
        _emit(args, _sigma_doc(ell.sigma_elliptic(desc), args))
        return EXIT_OK
    if args.order:
        inv, y = ell.yamabe_check(args.order)
        doc = {"order": args.order, "lambda": inv.lam.render(), "lambda_decimal": _dec(inv.lam, args),
               "aubin": y.aubin.render(), "within_bound": y.within_bound,
               "scalar": inv.scalar.render(), "alpha_sq": inv.alpha_sq.render()}
        _emit(args, doc)
        return EXIT_OK
    raise UsageError("elliptic needs one of --verify-l31, --lens, --case, --order")


def cmd_kummer(args) -> int:
    weights = _weights(args.weights) if args.weights else None
    try:
        L = kummer.KummerLattice.with_det(Fraction(args.det), weights)
        s = Fraction(args.s)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(str(e))
    vol = kummer.kummer_volume(L, s)
    doc = {"det": str(L.covolume), "singular_classes": kummer.distinct_classes(L),
           "s_lambda": mpmath.nstr(kummer.s_lambda(L, args.precision + 5), args.precision),
           "s": str(s), "volume": vol.render() if hasattr(vol, "render") else mpmath.nstr(vol, args.precision),
           "volume_decimal": str(cf_eval(vol, args.precision))}
    if args.square_check:
        chk = kummer.square_kummer_check()
        doc.update({"W": chk.W.render(), "D": chk.D.render(), "square_check_passed": chk.passed})
    _emit(args, doc)
    return EXIT_OK


def cmd_special(args) -> int:
    doc = {}
    if args.elliptic_e:
        k = _expression(args.elliptic_e)
        doc["elliptic_E"] = mpmath.nstr(elliptic_E(k, args.precision + 5), args.precision)
    if args.aubin:
        a = aubin_bound(args.aubin)
        doc["aubin"] = a.render()
        doc["aubin_decimal"] = _dec(a, args)
    if args.sphere_volume:
        v = sphere_volume(args.sphere_volume)
        doc["sphere_volume"] = v.render()
        doc["sphere_volume_decimal"] = _dec(v, args)
    if not doc:
        raise UsageError("special needs --elliptic-e, --aubin or --sphere-volume")
    _emit(args, doc)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS, help="significant digits")

    ap = _Parser(prog="sigmainv", description="Canonical metric invariants of flat, elliptic and Kummer manifolds.",
                 parents=[common])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("report", parents=[common], help="recompute every claim")
    p.add_argument("--select", default="all", choices=("all",) + report.TAGS)
    p.add_argument("--negative-control", action="store_true", help="perturb the built-in lattice basis")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("lattice", parents=[common], help="volume, shortest basis and theta series")
    p.add_argument("--file", help="JSON file with rank and basis_columns (default: built-in pair)")
    p.add_argument("--theta", type=int, metavar="BOUND")
    p.add_argument("--shortest", action="store_true")
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("torus", parents=[common], help="invariants of a flat torus conformal class")
    p.add_argument("--direction", help="comma-separated integer direction")
    p.add_argument("--canonical", type=int, metavar="N")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("euclid3", parents=[common], help="closed Euclidean 3-manifolds")
    p.add_argument("--table", type=int)
    p.add_argument("--id")
    p.add_argument("--diffeo", nargs=2, metavar=("A", "B"))
    p.set_defaults(func=cmd_euclid3)

    p = sub.add_parser("lens", parents=[common], help="invariant harmonic polynomials of L(p, q)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--degree", type=int)
    p.add_argument("--basis", action="store_true")
    p.set_defaults(func=cmd_lens)

    p = sub.add_parser("elliptic", parents=[common], help="elliptic 3-manifolds")
    p.add_argument("--lens", metavar="P,Q[,Q']")
    p.add_argument("--case", choices=tuple("abcd"))
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--h1", help="tetrahedral, octahedral, icosahedral or dihedral:ORDER")
    p.add_argument("--h2", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--order", type=int, help="Yamabe check for |pi_1| = ORDER")
    p.add_argument("--verify-l31", action="store_true")
    p.add_argument("--probes", type=int, default=20)
    p.add_argument("--symbolic", action="store_true")
    p.set_defaults(func=cmd_elliptic)

    p = sub.add_parser("kummer", parents=[common], help="Kummer surface of a rectangular torus")
    p.add_argument("--det", default="1")
    p.add_argument("--weights", help="VALUExCOUNT or a comma-separated list of 16 weights")
    p.add_argument("--s", default="1")
    p.add_argument("--square-check", action="store_true")
    p.set_defaults(func=cmd_kummer)

    p = sub.add_parser("special", parents=[common], help="special values")
    p.add_argument("--elliptic-e", metavar="K", help="modulus expression, e.g. '2*sqrt(2)/3'")
    p.add_argument("--aubin", type=int, metavar="N")
    p.add_argument("--sphere-volume", type=int, metavar="N")
    p.set_defaults(func=cmd_special)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.format = getattr(args, "format", "table")
    args.precision = getattr(args, "precision", 10)
    if args.precision < 1:
        print("sigmainv: error: --precision must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except EnumerationBudgetError as e:
        print(f"sigmainv: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, SigmaInvError) as e:
        print(f"sigmainv: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
