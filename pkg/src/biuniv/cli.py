"""Command-line front end.

Exit codes: 0 success, 1 infeasible certificate or bound violation found,
2 usage error (one-line diagnostic naming the offending flag).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import report
from .bounds import COROLLARIES, ClassParams, ParamError, bound_a_2m1, bound_a_m1, compare_table, corollary_table, fekete_szego_bound, h_gamma
from .extremal import DEFAULT_DENSITY, FUNCTIONALS, MIN_DENSITY, SCOPE_NOTE, default_grid, validate_bounds
from .ma_minda import PhiError, parse_phi
from .schwarz import check_membership
from .series import CATALOG, SeriesError, TruncatedSeries, catalog_function, inverse_mfold_closed_form, is_mfold_symmetric, mfold_lift, revert


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _number(text, flag):
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(str(text).strip().replace("i", "j"))
    except ValueError:
        raise UsageError(flag, f"not a number: {text!r}") from None


def _real(text, flag):
    x = _number(text, flag)
    if isinstance(x, complex):
        if x.imag:
            raise UsageError(flag, f"expected a real number, got {text!r}")
        return x.real
    return x


def _params(args, with_gamma=True) -> ClassParams:
    if args.m < 1:
        raise UsageError("--m", f"must be a positive integer, got {args.m}")
    lam = _real(args.lam, "--lambda")
    if not 0 <= lam < 1:
        raise UsageError("--lambda", f"must lie in [0, 1), got {args.lam}")
    gamma = _real(args.gamma, "--gamma") if with_gamma and args.gamma is not None else 0
    return ClassParams(args.m, lam, gamma)


def _phi(spec, flag="--phi"):
    try:
        return parse_phi(spec)
    except PhiError as exc:
        raise UsageError(flag, str(exc)) from None


def _coeff_list(text, flag):
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError(flag, "empty coefficient list")
    return [_number(t, flag) for t in items]


def _read_series(path, flag) -> TruncatedSeries:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(flag, f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(flag, f"invalid JSON in {path}: {exc.msg}") from None
    try:
        return TruncatedSeries.from_dict(data)
    except (SeriesError, ValueError, TypeError) as exc:
        raise UsageError(flag, str(exc)) from None


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_bounds(args) -> int:
    p = _params(args)
    phi = _phi(args.phi)
    b1 = bound_a_m1(phi, p)
    b2 = bound_a_2m1(phi, p)
    fs = fekete_szego_bound(phi, p)
    h = h_gamma(phi, p)
    doc = {
        "phi": phi.label, "m": p.m, "lambda": p.lam, "gamma": p.gamma,
        "B1": phi.b1, "B2": phi.b2,
        "bound_a_m1": b1.value,
        "bound_a_2m1": b2.value,
        "fekete_szego": fs.value,
        "h_gamma": h,
        "branch": {"a_2m1": b2.branch, "fekete_szego": fs.branch},
        "degenerate": fs.degenerate,
    }
    row = dict(doc, branch_a_2m1=b2.branch, branch_fekete_szego=fs.branch)
    del row["branch"]
    _emit(args, report.render(doc, args.format, [row]))
    return 0


def _mfold_input(args, flag="--coeffs"):
    vals = _coeff_list(args.coeffs, flag)
    exact = all(isinstance(v, Fraction) for v in vals)
    return vals, ("exact" if exact else "float")


def cmd_invert(args) -> int:
    if args.m < 1:
        raise UsageError("--m", f"must be a positive integer, got {args.m}")
    vals, backend = _mfold_input(args)
    order = args.order if args.order is not None else args.m * len(vals) + 1
    f = TruncatedSeries.mfold(args.m, vals, max(order, 1), backend)
    g = revert(f)
    a = (vals + [0, 0, 0])[:3]
    closed = inverse_mfold_closed_form(args.m, *a)
    doc = {
        "m": args.m,
        "f": f.to_dict(),
        "inverse": g.to_dict(),
        "closed_form": {"g_m1": closed[0], "g_2m1": closed[1], "g_3m1": closed[2]},
        "text": str(g),
    }
    rows = [{"n": n, "re": complex(c).real, "im": complex(c).imag} for n, c in enumerate(g.coeffs)]
    _emit(args, report.render(doc, args.format, rows))
    return 0


def cmd_lift(args) -> int:
    if args.m < 1:
        raise UsageError("--m", f"must be a positive integer, got {args.m}")
    sources = [x for x in (args.coeffs, args.f, args.function) if x is not None]
    if len(sources) != 1:
        raise UsageError("--coeffs", "give exactly one of --coeffs, --f, --function")
    if args.coeffs is not None:
        vals = _coeff_list(args.coeffs, "--coeffs")
        f = TruncatedSeries.normalized(vals)
    elif args.f is not None:
        f = _read_series(args.f, "--f")
    else:
        if args.function not in CATALOG:
            raise UsageError("--function", f"unknown function; choose from {', '.join(CATALOG)}")
        f = catalog_function(args.function, args.source_order)
    if not f.is_normalized():
        raise UsageError("--coeffs" if args.coeffs else "--f", "series must be normalized (c0 = 0, c1 = 1)")
    h = mfold_lift(f, args.m, args.order)
    doc = {"m": args.m, "lift": h.to_dict(), "mfold_symmetric": is_mfold_symmetric(h, args.m), "text": str(h)}
    rows = [{"n": n, "re": complex(c).real, "im": complex(c).imag} for n, c in enumerate(h.coeffs)]
    _emit(args, report.render(doc, args.format, rows))
    return 0


def cmd_check(args) -> int:
    p = _params(args, with_gamma=False)
    phi = _phi(args.phi)
    f = _read_series(args.f, "--f")
    if not f.is_normalized():
        raise UsageError("--f", "series must be normalized (c0 = 0, c1 = 1)")
    if not is_mfold_symmetric(f, p.m):
        raise UsageError("--f", f"series is not {p.m}-fold symmetric")
    if args.order is not None and args.order < p.m:
        raise UsageError("--order", f"must be at least m = {p.m}")
    cert = check_membership(f, phi, p, args.order)
    doc = cert.to_dict()
    doc.update(phi=phi.label, m=p.m, **{"lambda": p.lam})
    _emit(args, report.to_json(doc))
    return 0 if cert.feasible else 1


def _load_grid(path):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError("--grid", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError("--grid", f"invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise UsageError("--grid", "grid must be a JSON object")
    grid = {}
    try:
        grid["m"] = [int(m) for m in data.get("m", [])]
        grid["lambda"] = [Fraction(str(x)) for x in data.get("lambda", [])]
        grid["gamma"] = [x if isinstance(x, str) and "m" in x else Fraction(str(x)) for x in data.get("gamma", [0])]
    except (TypeError, ValueError) as exc:
        raise UsageError("--grid", f"bad grid value: {exc}") from None
    if any(m < 1 for m in grid["m"]):
        raise UsageError("--grid", "every m must be >= 1")
    if any(not 0 <= x < 1 for x in grid["lambda"]):
        raise UsageError("--grid", "every lambda must lie in [0, 1)")
    grid["phi"] = [_phi(s, "--grid") for s in data.get("phi", [])]
    return grid


def cmd_search(args) -> int:
    if args.density < MIN_DENSITY:
        raise UsageError("--density", f"must be >= {MIN_DENSITY}, got {args.density}")
    grid = _load_grid(args.grid) if args.grid else default_grid()
    functionals = FUNCTIONALS if args.functional is None else (args.functional,)
    summary = validate_bounds(grid, args.density, functionals, args.random)
    doc = summary.to_dict()
    rows = []
    for cell in doc["cells"]:
        row = dict(cell["params"])
        row.update({k: v for k, v in cell.items() if k != "params"})
        rows.append(row)
    text = report.render(doc, args.format, rows)
    _emit(args, text)
    if summary.violations:
        print(f"biuniv: {len(summary.violations)} bound violation(s) found", file=sys.stderr)
        return 1
    return 0


def cmd_corollaries(args) -> int:
    specs = args.phi or ["mobius:0", "mobius:0.5", "power:0.5", "power:1"]
    phis = [_phi(s) for s in specs]
    rows = corollary_table(phis)
    doc = {"rows": rows, "corollaries": [c.id for c in COROLLARIES]}
    _emit(args, report.render(doc, args.format, rows))
    return 0


def cmd_compare(args) -> int:
    rows = compare_table()
    _emit(args, report.render({"rows": rows}, args.format, rows))
    return 0


def _add_format(p, default=report.JSON):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const=report.JSON)
    g.add_argument("--csv", dest="format", action="store_const", const=report.CSV)
    g.add_argument("--text", dest="format", action="store_const", const=report.TEXT)
    p.set_defaults(format=default)
    p.add_argument("--out", help="write output to this file instead of stdout")


def _add_class(p, gamma=True):
    p.add_argument("--m", type=int, required=True, help="fold order m >= 1")
    p.add_argument("--lambda", dest="lam", default="0", help="class parameter in [0, 1)")
    if gamma:
        p.add_argument("--gamma", default=None, help="Fekete-Szego weight")
    p.add_argument("--phi", required=True, help="power:ALPHA | mobius:BETA | custom:B1,B2[,...]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biuniv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="evaluate the coefficient and Fekete-Szego bounds")
    _add_class(p)
    _add_format(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("invert", help="series inverse of z + a_{m+1} z^{m+1} + ...")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--coeffs", required=True, help="a_{m+1},a_{2m+1},... (fractions allowed)")
    p.add_argument("--order", type=int, default=None)
    _add_format(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("lift", help="m-fold symmetric lift (f(z^m))^(1/m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--coeffs", default=None, help="a_2,a_3,... of a normalized f")
    p.add_argument("--f", default=None, help="series JSON file")
    p.add_argument("--function", default=None, help=f"one of {', '.join(CATALOG)}")
    p.add_argument("--source-order", type=int, default=8, help="Taylor order used for --function")
    p.add_argument("--order", type=int, default=None)
    _add_format(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("check", help="certify truncated class-membership conditions")
    _add_class(p, gamma=False)
    p.add_argument("--f", required=True, help="series JSON file")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="grid-search the Schwarz parameter set against the bounds")
    p.add_argument("--grid", default=None, help="grid JSON; default m 1..3, three lambdas, four phis")
    p.add_argument("--density", type=int, default=DEFAULT_DENSITY)
    p.add_argument("--functional", choices=FUNCTIONALS, default=None)
    p.add_argument("--random", type=int, default=0, help="extra seeded random samples per cell")
    _add_format(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("corollaries", help="specialized bounds vs their printed forms")
    p.add_argument("--phi", action="append", default=None)
    _add_format(p)
    p.set_defaults(func=cmd_corollaries)

    p = sub.add_parser("compare", help="general bounds vs earlier class-specific bounds")
    _add_format(p)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"biuniv {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ParamError, PhiError, SeriesError) as exc:
        print(f"biuniv {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
