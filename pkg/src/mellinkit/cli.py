"""Command-line interface: ``mellinkit {polygon,mellin,germ,verify,corpus}``.

Exit codes: 0 success, 1 a check failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from typing import List, Optional, Sequence

from .errors import MellinKitError, NonRationalPoint, ParseError
from .germs import GermPoint, germ_at, invariants
from .mellin import germ_at_infinity_op, mellin
from .microlocal import default_window, local_mellin_dim
from .parser import parse
from .polygons import difference_polygon, global_polygon, local_diff_polygon
from .render import write_svg
from .stationary import CHECKS, Profile, Status, random_operator, verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def load_schema() -> dict:
    text = resources.files("mellinkit").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _color(text: str, code: str, stream) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


def _status(text: str) -> str:
    code = {"PASS": "32", "FAIL": "31"}.get(text, "33")
    return _color(text, code, sys.stdout)


def _emit(args, data: dict, text_lines: Sequence[str], panels) -> None:
    if args.svg:
        write_svg(args.svg, panels)
    if args.figure:
        from .plotting import save_figure

        save_figure(args.figure, panels)
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        for line in text_lines:
            print(line)


def _polygon_lines(label: str, N) -> List[str]:
    out = [f"{label}: width {N.width}, height {N.height}"]
    for s, w in N.sides:
        out.append(f"  side slope {s} width {w}")
    if N.vertical_height:
        out.append(f"  vertical side height {N.vertical_height}")
    return out


def cmd_polygon(args) -> int:
    P = parse(args.expr)
    N = global_polygon(P)
    data = {"operator": args.expr, "global_polygon": N.to_dict()}
    _emit(args, data, [f"operator: {P}"] + _polygon_lines("global polygon", N), [("global", N)])
    return EXIT_OK


def cmd_mellin(args) -> int:
    P = parse(args.expr)
    M = mellin(P)
    G = germ_at_infinity_op(M)
    N = difference_polygon(G)
    data = {"operator": args.expr, "mellin": str(M), "mellin_germ": str(G), "mellin_polygon": N.to_dict()}
    lines = [f"operator: {P}", f"mellin: {M}", f"germ at infinity: {G}"] + _polygon_lines("mellin polygon", N)
    _emit(args, data, lines, [("mellin germ", N)])
    return EXIT_OK


def cmd_germ(args) -> int:
    P = parse(args.expr)
    try:
        point = GermPoint.parse(args.at)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    L = germ_at(P, point)
    rep = invariants(L, point)
    guard = args.precision if args.precision is not None else 8
    dim = local_mellin_dim(L, point, default_window(L, guard))
    N = local_diff_polygon(L)
    data = {"operator": args.expr, "germ": rep.to_dict(), "local_operator": str(L),
            "local_polygon": N.to_dict(), "local_mellin_dim": dim}
    lines = [f"operator: {P}", f"germ at {point.label()}: {L}",
             f"dim {rep.dim}  irr {rep.irr}  mu {rep.mu}  local Mellin dim {dim}"]
    lines += _polygon_lines("local polygon", N)
    _emit(args, data, lines, [(f"germ at {point.label()}", N)])
    return EXIT_OK


def _report_lines(r) -> List[str]:
    lines = [f"operator: {r.operator_text}"]
    lines += _polygon_lines("global polygon", r.global_polygon)
    lines += _polygon_lines("mellin polygon", r.mellin_polygon)
    for g in r.locals:
        lines.append(f"germ {g.point.label():>6}: dim {g.dim} irr {g.irr} mu {g.mu}")
    if r.local_mellin_dims:
        lines.append("local Mellin dims: " + ", ".join(f"{k}: {v}" for k, v in r.local_mellin_dims.items()))
    neg, zero, pos = r.width_partition
    lines.append(f"width partition: negative {neg}, zero {zero}, positive {pos}")
    lines.append("horz: {" + ", ".join(str(h) for h in sorted(r.horz_set)) + "}")
    lines.append(f"punctual defect: {r.punctual_defect}")
    for name in CHECKS:
        res = r.checks[name]
        line = f"{name:<18} {_status(str(res.status.value))}"
        if res.reason and res.status is not Status.PASS:
            line += f"  ({res.reason})"
        lines.append(line)
    return lines


def cmd_verify(args) -> int:
    P = parse(args.expr)
    r = verify(P, expect_defect=args.expect_defect, precision=args.precision, text=args.expr)
    for w in r.warnings:
        print(_color(w.upper() if w.startswith("warning") else w, "33", sys.stderr), file=sys.stderr)
    _emit(args, r.to_dict(), _report_lines(r),
          [("global", r.global_polygon), ("mellin germ", r.mellin_polygon)])
    if not r.passed():
        if args.expect_defect is not None and r.punctual_defect != args.expect_defect:
            print(f"defect {r.punctual_defect} differs from expected {args.expect_defect}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _corpus_row(job):
    seed, profile, precision = job
    P = random_operator(seed, profile)
    return verify(P, precision=precision).to_dict()


def _structural_ok(row: dict) -> bool:
    """Every check except DIM_IDENTITY passes or is skipped."""
    return all(v == "PASS" or v.startswith("SKIPPED") for k, v in row["checks"].items() if k != "DIM_IDENTITY")


def cmd_corpus(args) -> int:
    if args.count < 0:
        raise _InputError("--count must be non-negative")
    profile = Profile(args.profile)
    jobs = [(args.seed + k, profile, args.precision) for k in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_corpus_row, jobs, chunksize=8))
    else:
        rows = [_corpus_row(j) for j in jobs]
    summary = {name: {"PASS": 0, "FAIL": 0, "SKIPPED": 0} for name in CHECKS}
    defects = {}
    for row in rows:
        for name, v in row["checks"].items():
            summary[name][v.split("(")[0]] += 1
        key = str(row["defect"])
        defects[key] = defects.get(key, 0) + 1
    structural = sum(_structural_ok(r) for r in rows)
    stats = {"checks": summary, "defects": defects, "structural_pass": structural, "count": len(rows)}
    if args.json:
        print(json.dumps({"profile": profile.value, "seed": args.seed, "count": args.count,
                          "summary": stats, "rows": rows}, indent=2))
    else:
        print("\t".join(["index", "seed", "operator", "defect"] + list(CHECKS)))
        for k, row in enumerate(rows):
            cells = [str(k), str(args.seed + k), row["operator"], str(row["defect"])]
            cells += [row["checks"][n] for n in CHECKS]
            print("\t".join(cells))
        for name in CHECKS:
            c = summary[name]
            print(f"# {name}: {c['PASS']} pass, {c['FAIL']} fail, {c['SKIPPED']} skipped")
        print("# defects: " + ", ".join(f"{k}: {v}" for k, v in sorted(defects.items())))
        print(f"# structural checks passed on {structural}/{len(rows)} operators")
    return EXIT_OK if structural == len(rows) else EXIT_FAIL


class _InputError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--svg", metavar="PATH", help="write the polygon(s) as SVG")
    p.add_argument("--figure", metavar="PATH", help="write the polygon(s) with matplotlib (png, pdf, ...)")
    p.add_argument("--precision", type=int, metavar="N", help="u-precision guard of the microlocal window")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mellinkit",
                                 description="Newton polygons, germs and Mellin transforms of operators "
                                             "on the punctured line")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("polygon", help="global Newton polygon")
    p.add_argument("expr")
    p.set_defaults(func=cmd_polygon)
    p = sub.add_parser("mellin", help="Mellin transform and its polygon at infinity")
    p.add_argument("expr")
    p.set_defaults(func=cmd_mellin)
    p = sub.add_parser("germ", help="formal germ at a point")
    p.add_argument("expr")
    p.add_argument("--at", required=True, help="0, inf or a nonzero rational")
    p.set_defaults(func=cmd_germ)
    p = sub.add_parser("verify", help="run the stationary-phase checks")
    p.add_argument("expr")
    p.add_argument("--expect-defect", type=int, metavar="N")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("corpus", help="verify a batch of random operators (TSV output)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--profile", choices=[x.value for x in Profile], default="SMALL")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_corpus)
    for name in ("polygon", "mellin", "germ", "verify", "corpus"):
        _common(sub.choices[name])
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.precision is not None and args.precision < 1:
        print("error: --precision must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except ParseError as exc:
        expr = getattr(args, "expr", "")
        print(f"error: {exc}", file=sys.stderr)
        if expr:
            col = len(expr.encode()[:exc.offset].decode(errors="ignore"))
            print(f"  {expr}\n  {' ' * col}^", file=sys.stderr)
        return EXIT_INPUT
    except NonRationalPoint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (_InputError, MellinKitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
