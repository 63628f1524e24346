"""JSON (de)serialization for the library's value types.

Coefficients are reduced fraction strings ("-1/48", "3", "0"); words are
lists of generator indices.  Terms are emitted in the canonical
length-then-lexicographic order so identical values serialize to
identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .cyclic import CyclicPoly, cyc_canon
from .deriv import TAutElement, TDerivation
from .grp import LoopElt, loop_canon
from .kv import KVSolution
from .ncalg import Context, NCPoly, Series, word_key


def frac_str(c: Fraction) -> str:
    return str(c)


def ncpoly_to_obj(a: NCPoly) -> dict:
    return {
        "n": a.ctx.n,
        "N": a.ctx.N,
        "terms": [
            {"word": list(w), "coef": frac_str(a.terms[w])}
            for w in sorted(a.terms, key=word_key)
        ],
    }


def ncpoly_from_obj(obj: dict, ctx: Context | None = None) -> NCPoly:
    ctx = ctx or Context(obj["n"], obj["N"])
    if (ctx.n, ctx.N) != (obj["n"], obj["N"]):
        raise ValueError("context mismatch in serialized value")
    terms = {tuple(t["word"]): Fraction(t["coef"]) for t in obj["terms"]}
    return NCPoly(ctx, terms)


def cyclic_to_obj(c: CyclicPoly) -> dict:
    return {
        "n": c.ctx.n,
        "N": c.ctx.N,
        "cyclic": True,
        "terms": [
            {"word": list(w), "coef": frac_str(c.terms[w])}
            for w in sorted(c.terms, key=word_key)
        ],
    }


def cyclic_from_obj(obj: dict, ctx: Context | None = None) -> CyclicPoly:
    ctx = ctx or Context(obj["n"], obj["N"])
    terms = {cyc_canon(tuple(t["word"])): Fraction(t["coef"]) for t in obj["terms"]}
    return CyclicPoly(ctx, terms)


def tder_to_obj(u: TDerivation) -> list:
    return [ncpoly_to_obj(c) for c in u.components]


def tder_from_obj(obj: list, ctx: Context) -> TDerivation:
    return TDerivation(ctx, [ncpoly_from_obj(o, ctx) for o in obj])


def taut_to_obj(F: TAutElement) -> dict:
    return {
        "n": F.ctx.n,
        "N": F.ctx.N,
        "f": [ncpoly_to_obj(f) for f in F.logs()],
    }


def taut_from_obj(obj: dict, ctx: Context | None = None) -> TAutElement:
    ctx = ctx or Context(obj["n"], obj["N"])
    logs = [ncpoly_from_obj(o, ctx) for o in obj["f"]]
    return TAutElement.from_logs(logs)


def loop_to_obj(c: LoopElt) -> dict:
    return {
        "n": c.n,
        "terms": [
            {"word": list(w), "coef": frac_str(c.terms[w])}
            for w in sorted(c.terms, key=lambda w: (len(w), w))
        ],
    }


def loop_from_obj(obj: dict) -> LoopElt:
    return LoopElt(
        obj["n"],
        {loop_canon(tuple(t["word"])): Fraction(t["coef"]) for t in obj["terms"]},
    )


def solution_to_obj(sol: KVSolution) -> dict:
    return {
        "n": sol.n,
        "N": sol.N,
        "F": taut_to_obj(sol.F),
        "h": [frac_str(c) for c in sol.h.coeffs],
        "log": [
            {"stage": stage, "u": tder_to_obj(u)} for stage, u in sol.factors
        ],
        "tool_version": __version__,
    }


def solution_from_obj(obj: dict) -> KVSolution:
    ctx = Context(obj["n"], obj["N"])
    F = taut_from_obj(obj["F"], ctx)
    h = Series(obj["N"], [Fraction(c) for c in obj["h"]])
    factors = []
    for entry in obj.get("log", []):
        fctx = ctx
        if entry["u"] and (entry["u"][0]["n"], entry["u"][0]["N"]) != (ctx.n, ctx.N):
            fctx = Context(entry["u"][0]["n"], entry["u"][0]["N"])
        factors.append((entry["stage"], tder_from_obj(entry["u"], fctx)))
    return KVSolution(F=F, h=h, n=obj["n"], N=obj["N"], factors=factors)


def dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def save_solution(sol: KVSolution, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(solution_to_obj(sol)))


def load_solution(path: str) -> KVSolution:
    with open(path, encoding="utf-8") as fh:
        return solution_from_obj(json.load(fh))
