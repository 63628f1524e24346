"""Double brackets and the operations they induce.

A double bracket is a bilinear map Pi: A (x) A -> A (x) A obeying

    Pi(a, bc) = Pi(a, b) c + b Pi(a, c)          (outer structure)
    Pi(ab, c) = Pi(a, c) * b + a * Pi(b, c)      (inner structure)

so it is determined by its values on generator pairs.  The brackets of
interest here are *tangential*: Pi(a, -) lands in the span of the
ad_{x_i} d_i basis, and the coefficient tables are carried alongside the
generator tables.  In that basis,

    kks   : {x_i, -} = ad_{x_i} d_i
    pi_s  : {a, -}   = s' phi_0 s'' a - a s' phi_0 s''
    mult  : {x_i, -} = (z^2/(1-e^{-z}))|_{z=ad_{x_i}} d_i
                        + sum_{k<i} ad_{x_i} (ad_{x_k} d_k)

with s' (x) s'' the tilde-coproduct of s(-x_0) and x_0 = -sum_i x_i.
Sums of brackets are taken tablewise, preserving the summands' split.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclic import (
    CycMixLeft,
    CycMixRight,
    CyclicPoly,
    CycTensor,
    project,
    tilde_delta,
)
from .deriv import (
    Derivation,
    DoubleDerivation,
    TDerivation,
    TDoubleDerivation,
    dd_collapse,
    dd_on_cyclic,
    der_apply,
    tdd_collapse,
    tdd_to_dd,
)
from .dvg import tdiv, tdivT_pair
from .ncalg import (
    Context,
    NCPoly,
    Series,
    TensorPoly,
    Word,
    mult_bracket_series,
    s_series,
    tensor,
)


class DoubleBracket:
    """Double bracket with generator table and tangential coefficient table."""

    __slots__ = ("ctx", "gen_table", "tang", "skew", "name", "_prep")

    def __init__(
        self,
        ctx: Context,
        gen_table: list[list[TensorPoly]],
        tang: list[TDoubleDerivation] | None = None,
        skew: bool = False,
        name: str = "",
    ):
        self.ctx = ctx
        self.gen_table = gen_table
        self.tang = tang
        self.skew = skew
        self.name = name
        self._prep = None
        if tang is not None:
            for i in range(ctx.n):
                got = tdd_to_dd(tang[i]).table
                for j in range(ctx.n):
                    if got[j] != gen_table[i][j]:
                        raise ValueError(
                            "tangential table inconsistent with generator table"
                        )

    @property
    def tangential(self) -> bool:
        return self.tang is not None

    def __add__(self, other: "DoubleBracket") -> "DoubleBracket":
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        gt = [
            [self.gen_table[i][j] + other.gen_table[i][j] for j in range(self.ctx.n)]
            for i in range(self.ctx.n)
        ]
        tang = None
        if self.tang is not None and other.tang is not None:
            tang = [self.tang[i] + other.tang[i] for i in range(self.ctx.n)]
        return DoubleBracket(
            self.ctx,
            gt,
            tang,
            skew=self.skew and other.skew,
            name=f"{self.name}+{other.name}",
        )


def make_kks(ctx: Context) -> DoubleBracket:
    """The Kirillov-Kostant-Souriau bracket: {x_i, -} = ad_{x_i} d_i."""
    gt = []
    for i in range(1, ctx.n + 1):
        row = []
        for j in range(1, ctx.n + 1):
            if i == j:
                xi = (i,)
                row.append(
                    TensorPoly(ctx, {((), xi): Fraction(1), (xi, ()): Fraction(-1)})
                )
            else:
                row.append(TensorPoly.zero(ctx))
        gt.append(row)
    tang = [TDoubleDerivation.basic(ctx, i) for i in range(1, ctx.n + 1)]
    return DoubleBracket(ctx, gt, tang, skew=True, name="kks")


def s_sweedler(ctx: Context, s: Series) -> TensorPoly:
    """tilde-coproduct of s(-x_0), with x_0 = -sum_i x_i."""
    x0 = NCPoly.zero(ctx)
    for i in range(1, ctx.n + 1):
        x0 = x0 - NCPoly.gen(ctx, i)
    return tilde_delta(s.eval_poly(-x0))


def make_pi_s(ctx: Context, s: Series | None = None) -> DoubleBracket:
    """The series bracket {a, -} = s' phi_0 s'' a - a s' phi_0 s''.

    Defaults to s(z) = 1/z - 1/(1 - e^{-z}), whose pole cancels; only the
    regular series is ever evaluated.
    """
    if s is None:
        s = s_series(ctx.N)
    sw = s_sweedler(ctx, s)
    unit = NCPoly.unit(ctx)
    tang = []
    for i in range(1, ctx.n + 1):
        xi = NCPoly.gen(ctx, i)
        # coefficient (same in every slot): s' (x) s'' x_i - x_i s' (x) s''
        coeff = sw * tensor(unit, xi) - tensor(xi, unit) * sw
        tang.append(TDoubleDerivation(ctx, [coeff] * ctx.n))
    gt = [[tdd_to_dd(tang[i]).table[j] for j in range(ctx.n)] for i in range(ctx.n)]
    return DoubleBracket(ctx, gt, tang, skew=False, name="s")


def make_pi_mult(ctx: Context) -> DoubleBracket:
    """The bracket matching the boundary pairing of the exponential
    expansion: a Bernoulli-type series term plus a fusion term."""
    # coefficients of degree N come from series order N+1, so go one past N
    phi = mult_bracket_series(ctx.N + 1)
    tang = []
    for i in range(1, ctx.n + 1):
        coeffs = [TensorPoly.zero(ctx) for _ in range(ctx.n)]
        # series part in slot i: sum_m phi_m ad_{x_i}^m d_i, where
        # ad_{x_i}^m d_i has coefficient sum_s (-1)^s C(m-1,s) x_i^{m-1-s} (x) x_i^s
        acc = TensorPoly.zero(ctx)
        for m in range(1, ctx.N + 2):
            if not phi[m]:
                continue
            t: dict = {}
            for s_idx in range(m):
                c = Fraction((-1) ** s_idx) * _binom(m - 1, s_idx)
                t[((i,) * (m - 1 - s_idx), (i,) * s_idx)] = c
            acc = acc + TensorPoly(ctx, t).scale(phi[m])
        coeffs[i - 1] = acc
        # fusion part: + ad_{x_i}(ad_{x_k} d_k) for k < i
        xi = (i,)
        fus = TensorPoly(ctx, {(xi, ()): Fraction(1), ((), xi): Fraction(-1)})
        for k in range(1, i):
            coeffs[k - 1] = coeffs[k - 1] + fus
        tang.append(TDoubleDerivation(ctx, coeffs))
    gt = [[tdd_to_dd(tang[i]).table[j] for j in range(ctx.n)] for i in range(ctx.n)]
    return DoubleBracket(ctx, gt, tang, skew=False, name="mult")


def make_pi_add(ctx: Context) -> DoubleBracket:
    """kks + pi_s, kept as the tablewise sum of its two halves."""
    out = make_kks(ctx) + make_pi_s(ctx)
    out.name = "add"
    return out


def _binom(n: int, k: int) -> Fraction:
    from math import comb

    return Fraction(comb(n, k))


# -- evaluation ---------------------------------------------------------


def _prepared(db: DoubleBracket):
    """Generator table flattened to degree-sorted entry lists."""
    if db._prep is None:
        n = db.ctx.n
        db._prep = [
            [
                sorted(
                    ((len(p) + len(q), p, q, cc) for (p, q), cc in db.gen_table[i][j].terms.items()),
                )
                for j in range(n)
            ]
            for i in range(n)
        ]
    return db._prep


def db_eval(db: DoubleBracket, a: NCPoly, b: NCPoly) -> TensorPoly:
    """Pi(a, b), expanded by both Leibniz rules from the generator table.

    The surrounding letters contribute a fixed degree la + lb - 2 per word
    pair, so table entries are filtered once against that budget.
    """
    ctx = db.ctx
    N = ctx.N
    tab = _prepared(db)
    t: dict = {}
    for wa, ca in a.terms.items():
        la = len(wa)
        for wb, cb in b.terms.items():
            lb = len(wb)
            budget = N - la - lb + 2
            if budget < 0 or la == 0 or lb == 0:
                continue
            c = ca * cb
            for j in range(la):
                row = tab[wa[j] - 1]
                r1 = wa[j + 1 :]
                l2 = wa[:j]
                for k in range(lb):
                    entries = row[wb[k] - 1]
                    if not entries or entries[0][0] > budget:
                        continue
                    # first leg:  w_<k  Pi'  z_>j   second leg:  z_<j Pi'' w_>k
                    l1 = wb[:k]
                    r2 = wb[k + 1 :]
                    for dpq, p, q, cc in entries:
                        if dpq > budget:
                            break
                        key = (l1 + p + r1, l2 + q + r2)
                        s = t.get(key, 0) + c * cc
                        if s:
                            t[key] = s
                        else:
                            del t[key]
    out = TensorPoly(ctx)
    out.terms = t
    return out


def db_dd(db: DoubleBracket, a: NCPoly) -> DoubleDerivation:
    """Pi(a, -) as a double derivation (generator table)."""
    ctx = db.ctx
    table = [db_eval(db, a, NCPoly.gen(ctx, j)) for j in range(1, ctx.n + 1)]
    return DoubleDerivation(ctx, table)


def db_tdd(db: DoubleBracket, a: NCPoly) -> TDoubleDerivation:
    """Pi(a, -) in tangential coefficients (needs the tangential table)."""
    if db.tang is None:
        raise ValueError("bracket is not tangential")
    ctx = db.ctx
    N = ctx.N
    coeffs = [dict() for _ in range(ctx.n)]
    for wa, ca in a.terms.items():
        for j, za in enumerate(wa):
            left, right = wa[:j], wa[j + 1 :]
            base = len(left) + len(right)
            for slot in range(ctx.n):
                entry = db.tang[za - 1].coeffs[slot]
                if entry.is_zero():
                    continue
                acc = coeffs[slot]
                for (p, q), cc in entry.terms.items():
                    if base + len(p) + len(q) > N:
                        continue
                    key = (left + p, q + right)
                    s = acc.get(key, 0) + ca * cc
                    if s:
                        acc[key] = s
                    else:
                        acc.pop(key, None)
    out = []
    for slot in range(ctx.n):
        tp = TensorPoly(ctx)
        tp.terms = coeffs[slot]
        out.append(tp)
    return TDoubleDerivation(ctx, out)


def db_tder(db: DoubleBracket, c: CyclicPoly) -> TDerivation:
    """The tangential lift of {|a|, -}; rotation-independent."""
    out = TDerivation.zero(db.ctx)
    for w, coef in c.terms.items():
        out = out + tdd_collapse(db_tdd(db, NCPoly.word(db.ctx, w))).scale(coef)
    return out


def db_der(db: DoubleBracket, c: CyclicPoly) -> Derivation:
    """{|a|, -} as a plain derivation of A."""
    out = Derivation.zero(db.ctx)
    for w, coef in c.terms.items():
        out = out + dd_collapse(db_dd(db, NCPoly.word(db.ctx, w))).scale(coef)
    return out


def db_bracket(db: DoubleBracket, c1: CyclicPoly, c2: CyclicPoly) -> CyclicPoly:
    """The induced bracket |A| (x) |A| -> |A|."""
    d = db_der(db, c1)
    out = CyclicPoly(db.ctx)
    for w, coef in c2.terms.items():
        out = out + project(der_apply(d, NCPoly.word(db.ctx, w))).scale(coef)
    return out


def db_bracket_mixed(db: DoubleBracket, a: NCPoly, c: CyclicPoly) -> NCPoly:
    """The mixed bracket A (x) |A| -> A: a (x) |b| -> Pi(a,b)'' Pi(a,b)'."""
    return dd_on_cyclic(db_dd(db, a), c)


def db_bracket_left(db: DoubleBracket, c: CyclicPoly, b: NCPoly) -> NCPoly:
    """The mixed bracket |A| (x) A -> A: {|a|, b}."""
    return der_apply(db_der(db, c), b)


# -- divergence composites ----------------------------------------------


def db_tdiv(db: DoubleBracket, c: CyclicPoly) -> CycTensor:
    """tdiv of the tangential lift of {|a|, -}."""
    return tdiv(db_tder(db, c))


def db_tdivT(db: DoubleBracket, a: NCPoly) -> tuple[CycMixLeft, CycMixRight]:
    """The refined divergences of Pi(a, -)."""
    return tdivT_pair(db_tdd(db, a))


# -- KKS word formulas --------------------------------------------------


def mu_alg(a: NCPoly) -> CycMixLeft:
    """Algebraic self-intersection map: the left refined divergence of the
    KKS bracket, by its direct word formula."""
    ctx = a.ctx
    out: dict = {}
    for z, c in a.terms.items():
        m = len(z)
        for j in range(m):
            for k in range(j + 1, m):
                if z[j] != z[k]:
                    continue
                k1 = (z[j + 1 : k], z[: j + 1] + z[k + 1 :])
                k2 = (z[j:k], z[:j] + z[k + 1 :])
                for key, sign in ((k1, c), (k2, -c)):
                    kk = (  # canonical cyclic key on the left leg
                        _cyc(key[0]),
                        key[1],
                    )
                    s = out.get(kk, 0) + sign
                    if s:
                        out[kk] = s
                    else:
                        out.pop(kk, None)
    res = CycMixLeft(ctx)
    res.terms = out
    return res


def delta_alg(c: CyclicPoly) -> CycTensor:
    """Algebraic cobracket: minus the tangential divergence of the KKS
    bracket, by its direct word formula."""
    ctx = c.ctx
    out = CycTensor(ctx)
    for z, coef in c.terms.items():
        m = len(z)
        t: dict = {}
        for j in range(m):
            for k in range(j + 1, m):
                if z[j] != z[k]:
                    continue
                a1 = _cyc(z[j:k])
                b1 = _cyc(z[k + 1 :] + z[:j])
                a2 = _cyc(z[k:] + z[:j])
                b2 = _cyc(z[j + 1 : k])
                for key, sign in (
                    ((a1, b1), coef),
                    ((b1, a1), -coef),
                    ((a2, b2), coef),
                    ((b2, a2), -coef),
                ):
                    s = t.get(key, 0) + sign
                    if s:
                        t[key] = s
                    else:
                        t.pop(key, None)
        piece = CycTensor(ctx)
        piece.terms = t
        out = out + piece
    return out


def _cyc(w: Word) -> Word:
    if len(w) < 2:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))
