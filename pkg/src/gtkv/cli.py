"""Command-line front end.

Subcommands: solve, verify, duflo, transfer, report.  Exit codes:
0 pass, 1 check failure, 2 internal invariant breach, 64 usage error,
65 malformed data.  Output is deterministic for a fixed command line.
"""

from __future__ import annotations

import argparse
import glob
import json
import sys
from fractions import Fraction

from . import __version__
from .dbk import db_bracket, make_kks
from .expans import expand_cyc, expand_mixlg, theta_from_taut
from .grp import GrpOps, LoopElt, format_word, goldman_minus, parse_word
from .kv import KVSolution, SolverError, duflo_series, kv_defects, solve_kv
from .ncalg import Context, Series, s_series
from .serialize import (
    cyclic_to_obj,
    dump_json,
    load_solution,
    save_solution,
    solution_to_obj,
)
from .suites import (
    SUITE_HEADERS,
    SUITE_NAMES,
    suite_appendix,
    suite_center,
    suite_delta_alg,
    suite_dext,
    suite_div_cocycle,
    suite_involutivity,
    suite_mt,
    suite_muf,
    suite_mult,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INTERNAL = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> _Parser:
    p = _Parser(prog="gtkv", description=__doc__)
    p.add_argument("--version", action="version", version=f"gtkv {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("solve", help="solve the Kashiwara-Vergne equations")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--degree", type=int, default=6)
    sp.add_argument("--out", type=str, default=None)
    sp.add_argument("--format", choices=("json", "text"), default="text")

    vp = sub.add_parser("verify", help="run a named identity suite")
    vp.add_argument("--suite", type=str, required=True)
    vp.add_argument("--sol", type=str, default=None)
    vp.add_argument("--n", type=int, default=None)
    vp.add_argument("--degree", type=int, default=None)
    vp.add_argument("--samples", type=int, default=None)
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--format", choices=("json", "text"), default="text")
    vp.add_argument("--out", type=str, default=None)

    dp = sub.add_parser("duflo", help="print the Duflo series of a solution")
    dp.add_argument("--sol", type=str, required=True)
    dp.add_argument("--format", choices=("json", "text"), default="text")

    tp = sub.add_parser("transfer", help="evaluate operations on words both ways")
    tp.add_argument("--sol", type=str, required=True)
    tp.add_argument("--loop", action="append", default=[])
    tp.add_argument("--word", action="append", default=[])
    tp.add_argument("--format", choices=("json", "text"), default="text")

    rp = sub.add_parser("report", help="aggregate verify outputs")
    rp.add_argument("--in", dest="inputs", nargs="+", required=True)
    rp.add_argument("--format", choices=("json", "text"), default="text")
    return p


def _emit(payload: dict, fmt: str, out_path: str | None = None) -> None:
    if fmt == "json":
        text = dump_json(payload)
    else:
        lines = [payload.get("header", "")]
        marks = {"pass": "PASS", "fail": "FAIL", "skip": "SKIP"}
        for c in payload.get("checks", []):
            mark = marks.get(c["status"], "FAIL")
            detail = f"  [{c['detail']}]" if c.get("detail") else ""
            lines.append(f"[{mark}] {c['name']}{detail}")
        if "summary" in payload:
            lines.append(payload["summary"])
        text = "\n".join(line for line in lines if line) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def cmd_solve(args) -> int:
    if args.n < 2 or args.degree < 2:
        print("error: need --n >= 2 and --degree >= 2", file=sys.stderr)
        return EXIT_USAGE
    ctx = Context(args.n, args.degree)
    try:
        sol = solve_kv(ctx)
        d1, d2 = kv_defects(sol.F)
    except SolverError as exc:
        print(f"internal solver invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    obj = solution_to_obj(sol)
    obj["defects"] = {
        "first": repr(d1),
        "second": repr(d2),
        "zero": d1.is_zero() and d2.is_zero(),
    }
    if args.out:
        save_solution(sol, args.out)
    if args.format == "json":
        sys.stdout.write(dump_json(obj))
    else:
        stages = ",".join(sorted({s for s, _ in sol.factors})) or "none"
        sys.stdout.write(
            f"solved n={sol.n} degree={sol.N} (stages: {stages})\n"
            f"h = {[str(c) for c in sol.h.coeffs]}\n"
            f"defects zero: {obj['defects']['zero']}\n"
            + (f"written to {args.out}\n" if args.out else "")
        )
    return EXIT_PASS if obj["defects"]["zero"] else EXIT_INTERNAL


def _load_sol(path: str) -> KVSolution:
    try:
        return load_solution(path)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise _DataError(str(exc)) from exc


class _DataError(Exception):
    pass


def cmd_verify(args) -> int:
    suite = args.suite
    if suite not in SUITE_NAMES:
        print(
            f"error: unknown suite {suite!r}; choices: {', '.join(SUITE_NAMES)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    seed = args.seed
    samples = args.samples or 0
    n_values = [args.n] if args.n else [2, 3]
    try:
        if suite == "div-cocycle":
            checks = suite_div_cocycle(args.n or 2, args.degree or 6, seed, samples or 100)
        elif suite == "dext":
            checks = suite_dext(args.n or 2, args.degree or 6, seed, samples or 25)
        elif suite == "mult":
            checks = suite_mult(n_values, args.degree or 6, seed, samples)
        elif suite == "MT":
            checks = suite_mt(_need_sol(args), seed, samples or 50)
        elif suite == "muF":
            checks = suite_muf(_need_sol(args), seed, samples)
        elif suite == "delta-alg":
            checks = suite_delta_alg(_need_sol(args), seed, samples or 30)
        elif suite == "center":
            checks = suite_center(n_values, args.degree or 5, seed, samples)
        elif suite == "involutivity":
            checks = suite_involutivity(n_values, seed, samples)
        else:
            checks = suite_appendix(n_values, args.degree or 7, seed, samples or 100)
    except _DataError as exc:
        print(f"error: bad solution file: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SolverError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    ok = all(c.status in ("pass", "skip") for c in checks)
    payload = {
        "suite": suite,
        "header": f"suite {suite}: {SUITE_HEADERS[suite]}",
        "seed": seed,
        "checks": [c.as_dict() for c in checks],
        "status": "pass" if ok else "fail",
        "summary": f"{sum(c.status == 'pass' for c in checks)}/{len(checks)} checks passed",
    }
    _emit(payload, args.format, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def _need_sol(args) -> KVSolution:
    if not args.sol:
        raise _DataError("this suite needs --sol")
    return _load_sol(args.sol)


def cmd_duflo(args) -> int:
    try:
        sol = _load_sol(args.sol)
        rep = duflo_series(sol)
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    # the odd part of g against (1/2)(1/2 + s(z)): linear term exempt
    s = s_series(sol.N)
    target = (s + Series.const(sol.N, Fraction(1, 2))).scale(Fraction(1, 2))
    diff = rep.g.odd_part() - target
    match = all(diff[k] == 0 for k in range(2, sol.N))
    verdict = "match mod linear" if match else "MISMATCH"
    payload = rep.as_dict()
    payload["g_odd_vs_half_half_plus_s"] = verdict
    if args.format == "json":
        sys.stdout.write(dump_json(payload))
    else:
        sys.stdout.write(
            "Duflo series h (coefficients by degree):\n  "
            + " ".join(str(c) for c in rep.h.coeffs)
            + "\ng = dh/dz:\n  "
            + " ".join(str(c) for c in rep.g.coeffs)
            + f"\neven part matches the Bernoulli form: {rep.even_matches}"
            + f"\ng_odd vs (1/2)(1/2 + s): {verdict}"
            + f"\nodd coefficients: {rep.odd_gauge_note}\n"
        )
    return EXIT_PASS if (rep.even_matches and match) else EXIT_FAIL


def cmd_transfer(args) -> int:
    try:
        sol = _load_sol(args.sol)
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    ctx = Context(sol.n, sol.N)
    theta = theta_from_taut(sol.F)
    kks = make_kks(ctx)
    results = []
    try:
        loops = [parse_word(t, sol.n) for t in args.loop]
        words = [parse_word(t, sol.n) for t in args.word]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    if len(loops) == 2:
        l1, l2 = (LoopElt.of_word(sol.n, w) for w in loops)
        grp_side = expand_cyc(theta, goldman_minus(l1, l2))
        alg_side = db_bracket(kks, expand_cyc(theta, l1), expand_cyc(theta, l2))
        agree_deg = ctx.N - 1
        gt = {k: v for k, v in grp_side.terms.items() if len(k) <= agree_deg}
        at = {k: v for k, v in alg_side.terms.items() if len(k) <= agree_deg}
        results.append(
            {
                "op": "bracket (minus Goldman sign convention)",
                "inputs": [format_word(w) for w in loops],
                "group_side": cyclic_to_obj(grp_side),
                "algebra_side": cyclic_to_obj(alg_side),
                "agree_through_degree": agree_deg,
                "match": gt == at,
            }
        )
    for w in words:
        ops = GrpOps(sol.n)
        lhs = expand_mixlg(theta, ops.mu_word(w))
        results.append(
            {
                "op": "mu",
                "inputs": [format_word(w)],
                "image_terms": len(lhs.terms),
                "group_side": repr(lhs),
            }
        )
    if not results:
        print("error: pass two --loop arguments and/or --word arguments", file=sys.stderr)
        return EXIT_USAGE
    ok = all(r.get("match", True) for r in results)
    if args.format == "json":
        sys.stdout.write(dump_json({"results": results, "status": "pass" if ok else "fail"}))
    else:
        for r in results:
            sys.stdout.write(f"{r['op']} on {', '.join(r['inputs'])}\n")
            if "match" in r:
                sys.stdout.write(
                    f"  group side:   {r['group_side']['terms']}\n"
                    f"  algebra side: {r['algebra_side']['terms']}\n"
                    f"  match through degree {r['agree_through_degree']}: {r['match']}\n"
                )
            else:
                sys.stdout.write(f"  {r['group_side']}\n")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_report(args) -> int:
    paths = []
    for pattern in args.inputs:
        hits = sorted(glob.glob(pattern))
        paths.extend(hits if hits else [pattern])
    rows = []
    all_ok = True
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read {path}: {exc}", file=sys.stderr)
            return EXIT_DATA
        checks = data.get("checks", [])
        passed = sum(c.get("status") == "pass" for c in checks)
        ok = data.get("status") == "pass"
        all_ok = all_ok and ok
        rows.append(
            {
                "file": path,
                "suite": data.get("suite", "?"),
                "passed": passed,
                "total": len(checks),
                "status": data.get("status", "?"),
            }
        )
    if args.format == "json":
        sys.stdout.write(dump_json({"reports": rows, "status": "pass" if all_ok else "fail"}))
    else:
        width = max((len(r["file"]) for r in rows), default=4)
        sys.stdout.write(f"{'file'.ljust(width)}  suite          checks  status\n")
        for r in rows:
            sys.stdout.write(
                f"{r['file'].ljust(width)}  {r['suite'].ljust(13)}"
                f"  {r['passed']}/{r['total']:<5} {r['status']}\n"
            )
    return EXIT_PASS if all_ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "solve": cmd_solve,
        "verify": cmd_verify,
        "duflo": cmd_duflo,
        "transfer": cmd_transfer,
        "report": cmd_report,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
