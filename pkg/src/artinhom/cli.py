"""Command line: ``artinhom {homology,table,compare,verify}``.

Exit status is 0 when everything requested passed, 1 when a check or an
oracle comparison failed, 2 on bad usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import suites
from .braidrep import LeftBraidedSpace, one_dim_space, space_from_json
from .complexes import ROUTES, artin_homology, iso_check_D_vs_C, iso_check_F_vs_C
from .exactfield import QQ, FieldCtx, field, parse_expr
from .fixtures import hecke_space, one_dim_braided
from .oracle import classify, expected_homology

ONE_DIM_CAP = 8
HIGHER_DIM_CAP = 4

REPORT_SCHEMA = {
    "type": "object",
    "required": ["group", "n", "field", "coefficients", "route", "dims", "oracle_match"],
    "additionalProperties": False,
    "properties": {
        "group": {"enum": ["A", "B"]},
        "n": {"type": "integer", "minimum": 0},
        "field": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["rationals", "cyclotomic"]}, "m": {"type": "integer", "minimum": 3}},
        },
        "coefficients": {"type": "object", "additionalProperties": {"type": ["string", "integer", "null"]}},
        "route": {"enum": list(ROUTES)},
        "dims": {"type": "object", "patternProperties": {"^[0-9]+$": {"type": "integer", "minimum": 0}},
                 "additionalProperties": False},
        "oracle_match": {"type": ["boolean", "null"]},
    },
}
OUTPUT_SCHEMA = {"oneOf": [REPORT_SCHEMA, {"type": "array", "items": REPORT_SCHEMA}]}


class UsageError(Exception):
    pass


# -- argument parsing helpers ----------------------------------------------------

def parse_field(text: str) -> FieldCtx:
    text = text.strip()
    if text.upper() in ("Q", "QQ"):
        return QQ
    if text.startswith("cyclo:"):
        body = text[len("cyclo:"):]
        key, _, val = body.partition("=")
        if key.strip() == "m" and val.strip().isdigit() and int(val) >= 1:
            return field(int(val))
    raise UsageError(f"bad field spec {text!r}; use 'Q' or 'cyclo:m=<m>'")


def parse_onedim(text: str, ctx: FieldCtx) -> dict:
    out = {}
    for part in text.split(","):
        name, eq, value = part.partition("=")
        name = name.strip()
        if not eq or name not in ("q", "p", "u"):
            raise UsageError(f"bad one-dimensional parameter {part!r}; expected q=..,p=..,u=..")
        try:
            out[name] = parse_expr(value, ctx)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(str(exc)) from exc
    if "q" not in out:
        raise UsageError("q is required")
    for name, v in out.items():
        if not v:
            raise UsageError(f"{name} must be nonzero")
    return out


def parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"bad n {text!r}; use N or LO..HI") from exc
    if lo < 0 or hi < lo:
        raise UsageError(f"bad n range {text!r}")
    return list(range(lo, hi + 1))


def load_fixture(text: str):
    if text == "hecke":
        return hecke_space(2)
    path = Path(text)
    if not path.exists():
        raise UsageError(f"fixture {text!r} not found (give a JSON path or 'hecke')")
    try:
        return space_from_json(path.read_text())
    except (ValueError, KeyError) as exc:
        raise UsageError(f"invalid fixture {text!r}: {exc}") from exc


def coefficients_from_args(args, family: str):
    ctx = parse_field(args.field)
    if bool(args.onedim) == bool(args.fixture):
        raise UsageError("give exactly one of --onedim or --fixture")
    if args.fixture:
        space = load_fixture(args.fixture)
        return space, None
    params = parse_onedim(args.onedim, ctx)
    if family == "A":
        return one_dim_braided(params["q"], ctx), params
    if "p" not in params:
        raise UsageError("family B needs p")
    return one_dim_space(params["q"], params["p"], params.get("u", ctx.one()), ctx), params


def check_cap(ns, space, force: bool):
    cap = ONE_DIM_CAP if space.dim_v == 1 else HIGHER_DIM_CAP
    if max(ns) > cap:
        if not force:
            raise UsageError(f"n={max(ns)} exceeds the default cap {cap} for dim_v={space.dim_v}; "
                             "pass --force to run anyway")
        print(f"warning: n={max(ns)} above the cap {cap}; bases grow like (n+1) 2^n dim_v^n",
              file=sys.stderr)


# -- reports -----------------------------------------------------------------------

def _oracle(space, family, n, params):
    if family != "B" or params is None or "p" not in params:
        return None
    tag = classify(params["q"], params["p"], n)
    return expected_homology(tag, n).as_tuple()


def make_report(family, n, space, route, params, table) -> dict:
    expected = _oracle(space, family, n, params)
    got = table.as_tuple()
    return {
        "group": family,
        "n": n,
        "field": space.ctx.describe(),
        "coefficients": table.meta["coefficients"],
        "route": table.meta["route"],
        "dims": {str(j): d for j, d in enumerate(got)},
        "oracle_match": None if expected is None else expected == got,
    }


def render_reports(reports: list[dict], fmt: str, single: bool) -> str:
    if fmt == "json":
        return json.dumps(reports[0] if single else reports, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "j", "dim"])
        for r in reports:
            for j, d in r["dims"].items():
                w.writerow([r["n"], j, d])
        return buf.getvalue()
    lines = []
    for r in reports:
        dims = " ".join(f"{d}" for d in r["dims"].values())
        match = "" if r["oracle_match"] is None else ("  oracle: match" if r["oracle_match"] else "  oracle: MISMATCH")
        lines.append(f"H_*({r['group']}_{r['n']}) route {r['route']}: {dims}{match}")
    return "\n".join(lines) + "\n"


# -- commands ------------------------------------------------------------------------

def cmd_homology(args) -> int:
    ns = parse_range(args.n)
    space, params = coefficients_from_args(args, args.family)
    check_cap(ns, space, args.force)
    reports = []
    for n in ns:
        table = artin_homology(args.family, n, space, args.route, model=args.model, workers=args.workers)
        reports.append(make_report(args.family, n, space, args.route, params, table))
    sys.stdout.write(render_reports(reports, args.format, single=len(ns) == 1))
    return 0 if all(r["oracle_match"] is not False for r in reports) else 1


def cmd_table(args) -> int:
    ns = parse_range(args.n)
    space, params = coefficients_from_args(args, "B")
    if params is None or not (space.dim_v == space.dim_w == 1):
        raise UsageError("table needs one-dimensional coefficients (--onedim)")
    check_cap(ns, space, args.force)
    tag = classify(params["q"], params["p"], max(ns))
    rows = []
    for n in ns:
        got = artin_homology("B", n, space, args.route, workers=args.workers).as_tuple()
        want = expected_homology(tag, n).as_tuple()
        for j in range(n + 1):
            rows.append((n, j, got[j], want[j], got[j] == want[j]))
    ok = all(r[4] for r in rows)
    if args.format == "json":
        out = {"case": str(tag), "route": args.route,
               "rows": [{"n": n, "j": j, "computed": g, "expected": e, "match": m} for n, j, g, e, m in rows],
               "all_match": ok}
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "j", "computed", "expected", "match"])
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(f"case {tag}, route {args.route}")
        print(f"{'n':>3} {'j':>3} {'computed':>9} {'expected':>9}  match")
        for n, j, g, e, m in rows:
            print(f"{n:>3} {j:>3} {g:>9} {e:>9}  {'yes' if m else 'NO'}")
    return 0 if ok else 1


def cmd_compare(args) -> int:
    routes = [r.strip().upper() for r in args.routes.split(",") if r.strip()]
    if len(routes) < 2 or any(r not in ROUTES for r in routes):
        raise UsageError("--routes needs at least two of C, D, F")
    ns = parse_range(args.n)
    space, params = coefficients_from_args(args, "B")
    check_cap(ns, space, args.force)
    ok = True
    for n in ns:
        tables = {r: artin_homology("B", n, space, r, workers=args.workers).as_tuple() for r in routes}
        agree = len(set(tables.values())) == 1
        ok &= agree
        print(f"n={n}: " + "  ".join(f"{r}={tables[r]}" for r in routes) + ("  agree" if agree else "  DIFFER"))
        if args.matrix_iso:
            if isinstance(space, LeftBraidedSpace):
                checks = [("iso_check_D_vs_C", iso_check_D_vs_C(n, space))]
                if space.separable:
                    checks.append(("iso_check_F_vs_C", iso_check_F_vs_C(n, space)))
                for name, res in checks:
                    ok &= bool(res)
                    print(f"  {name} = {str(bool(res)).lower()}" + ("" if res else f"  ({res.mismatch})"))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    if args.corrupt:
        where = suites.corrupted_control()
        if where is None:
            print("FAIL [negative-control] corrupted complex was not detected")
            return 1
        q, c, r = where
        print(f"FAIL [negative-control] d o d != 0 first at degree {q}, column {c}, row {r}")
        return 1

    def show(res):
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} [{res.suite}:{res.tag}] {res.description} ({res.detail})", flush=True)

    results = suites.run(args.suite, args.max, args.nmax, on_result=show)
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} properties passed")
    return 0 if failed == 0 else 1


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artinhom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def coeff_opts(p, with_family=True):
        if with_family:
            p.add_argument("--family", choices=["A", "B"], default="B")
        p.add_argument("--n", required=True, help="N or LO..HI")
        p.add_argument("--onedim", help="one-dimensional coefficients, e.g. q=1,p=-1,u=1 (z is zeta_m)")
        p.add_argument("--fixture", help="JSON coefficient fixture, or 'hecke' for the built-in 2-dim one")
        p.add_argument("--field", default="Q", help="'Q' (default) or 'cyclo:m=<m>'")
        p.add_argument("--force", action="store_true", help="allow n above the default caps")
        p.add_argument("--workers", type=int, default=None, help="threads for rank computations")

    h = sub.add_parser("homology", help="homology of A_n or B_n")
    coeff_opts(h)
    h.add_argument("--route", choices=["C", "D", "F"], default="D")
    h.add_argument("--model", choices=["separable", "generic"], default=None,
                   help="model of the induced representation (routes C and D)")
    h.add_argument("--format", choices=["json", "csv", "text"], default="text")
    h.set_defaults(func=cmd_homology)

    t = sub.add_parser("table", help="computed homology next to the closed-form table",
                       description="Power detection for p only looks at exponents up to the top of the n range.")
    coeff_opts(t, with_family=False)
    t.add_argument("--route", choices=["C", "D", "F"], default="D")
    t.add_argument("--format", choices=["json", "csv", "text"], default="text")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("compare", help="compare routes")
    coeff_opts(c, with_family=False)
    c.add_argument("--routes", default="C,D,F")
    c.add_argument("--matrix-iso", action="store_true", help="also check the chain isomorphisms exactly")
    c.set_defaults(func=cmd_compare)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--suite", choices=suites.SUITES, default="all")
    v.add_argument("--max", type=int, default=8, help="size bound for combinatorics and algebra")
    v.add_argument("--nmax", type=int, default=5, help="n bound for complexes and routes")
    v.add_argument("--corrupt", action="store_true", help="negative control: corrupt a complex and expect failure")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        print(f"artinhom: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
