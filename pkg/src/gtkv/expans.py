"""Expansions: multiplicative group-like maps from the free group into the
truncated free Hopf algebra, and the transfer of the surface operations.

An expansion is determined by its generator images theta(g_i), each
group-like with leading term 1 + x_i.  The distinguished exponential
expansion sends g_i to e^{x_i}.  Composing with the inverse of a
tangential automorphism F gives theta_F = rho(F)^{-1} o theta_exp; when F
solves the first Kashiwara-Vergne equation, theta_F is special, i.e. it
sends the product g_1..g_n to exp(x_1 + .. + x_n).

``transfer_check`` compares a topologically characterized operation,
pushed through an expansion, against its algebraic counterpart, sample by
sample.  Divergence-type targets lose one degree of precision at the
truncation edge, so comparisons run up to an explicit degree bound
(normally one below the working truncation).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclic import (
    CycMixLeft,
    CycMixRight,
    CyclicPoly,
    CycTensor,
    project,
)
from .dbk import (
    DoubleBracket,
    db_bracket,
    db_eval,
    db_tdiv,
    db_tdivT,
    delta_alg,
    mu_alg,
    s_sweedler,
)
from .deriv import TAutElement, taut_apply, taut_inv
from .grp import (
    FWord,
    GroupRingElt,
    GrpOps,
    GRTensor,
    LoopElt,
    LoopTensor,
    MixGL,
    MixLG,
    goldman_minus,
    kappa_words,
    w_reduce,
)
from .lyndon import lyndon_basis
from .linalg import Matrix, solve
from .ncalg import (
    Context,
    NCPoly,
    Series,
    TensorPoly,
    commutator,
    grouplike_inverse,
    is_grouplike,
    nc_exp,
    nc_log,
    nc_mul,
    tensor,
)


class Expansion:
    """Group-like expansion, stored by its generator images."""

    def __init__(self, ctx: Context, images: list[NCPoly], name: str = "theta"):
        if len(images) != ctx.n:
            raise ValueError("need n generator images")
        self.ctx = ctx
        self.images = list(images)
        self.name = name
        self._inv = [grouplike_inverse(g) for g in images]
        self._cache: dict[FWord, NCPoly] = {(): NCPoly.unit(ctx)}

    def __call__(self, x: GroupRingElt) -> NCPoly:
        return expand(self, x)


def theta_exp(ctx: Context) -> Expansion:
    """The exponential expansion g_i -> e^{x_i}."""
    return Expansion(ctx, [nc_exp(NCPoly.gen(ctx, i)) for i in range(1, ctx.n + 1)],
                     name="theta_exp")


def theta_from_taut(F: TAutElement) -> Expansion:
    """theta_F = rho(F)^{-1} composed with the exponential expansion."""
    ctx = F.ctx
    Finv = taut_inv(F)
    images = [taut_apply(Finv, nc_exp(NCPoly.gen(ctx, i))) for i in range(1, ctx.n + 1)]
    return Expansion(ctx, images, name="theta_F")


def expand(theta: Expansion, x: GroupRingElt) -> NCPoly:
    """Image of a group-ring element; multiplicative on words."""
    out = NCPoly.zero(theta.ctx)
    for w, c in x.terms.items():
        out = out + _expand_word(theta, w).scale(c)
    return out


def _expand_word(theta: Expansion, w: FWord) -> NCPoly:
    if w in theta._cache:
        return theta._cache[w]
    head, tail = w[0], w[1:]
    img = theta.images[head - 1] if head > 0 else theta._inv[-head - 1]
    out = nc_mul(img, _expand_word(theta, tail))
    theta._cache[w] = out
    return out


def expand_cyc(theta: Expansion, c: LoopElt) -> CyclicPoly:
    """Image of a conjugacy-class combination; constant on classes."""
    out = CyclicPoly(theta.ctx)
    for w, coef in c.terms.items():
        out = out + project(_expand_word(theta, w)).scale(coef)
    return out


def expand_mixlg(theta: Expansion, m: MixLG) -> CycMixLeft:
    ctx = theta.ctx
    out = CycMixLeft(ctx)
    for (l, w), c in m.terms.items():
        cl = project(_expand_word(theta, l))
        pw = _expand_word(theta, w)
        for kw, cc in cl.terms.items():
            for ww, c2 in pw.terms.items():
                if len(kw) + len(ww) <= ctx.N:
                    out = out + CycMixLeft(ctx, {(kw, ww): c * cc * c2})
    return out


def expand_mixgl(theta: Expansion, m: MixGL) -> CycMixRight:
    ctx = theta.ctx
    out = CycMixRight(ctx)
    for (w, l), c in m.terms.items():
        pw = _expand_word(theta, w)
        cl = project(_expand_word(theta, l))
        for ww, c2 in pw.terms.items():
            for kw, cc in cl.terms.items():
                if len(kw) + len(ww) <= ctx.N:
                    out = out + CycMixRight(ctx, {(ww, kw): c * cc * c2})
    return out


def expand_gr_tensor(theta: Expansion, t: GRTensor) -> TensorPoly:
    ctx = theta.ctx
    out = TensorPoly.zero(ctx)
    for (a, b), c in t.terms.items():
        out = out + tensor(_expand_word(theta, a), _expand_word(theta, b)).scale(c)
    return out


def expand_loop_tensor(theta: Expansion, t: LoopTensor) -> CycTensor:
    ctx = theta.ctx
    out = CycTensor(ctx)
    for (a, b), c in t.terms.items():
        pa = project(_expand_word(theta, a))
        pb = project(_expand_word(theta, b))
        for ka, ca in pa.terms.items():
            for kb, cb in pb.terms.items():
                if len(ka) + len(kb) <= ctx.N:
                    out = out + CycTensor(ctx, {(ka, kb): c * ca * cb})
    return out


# -- specialness --------------------------------------------------------


@dataclass
class SpecialReport:
    group_like: bool
    leading_ok: bool
    tangential: bool
    tangential_fail_degree: int | None
    special: bool
    special_fail_degree: int | None
    conjugators: list[NCPoly] | None

    @property
    def is_special(self) -> bool:
        return self.group_like and self.leading_ok and self.tangential and self.special


def _conjugator_for(ctx: Context, i: int, target: NCPoly) -> tuple[NCPoly | None, int | None]:
    """Find g with e^{ad_g}(x_i) = target, degree by degree."""
    xi = NCPoly.gen(ctx, i)
    if target.graded(1) != xi:
        return None, 1
    g = NCPoly.zero(ctx)
    for k in range(1, ctx.N):
        cur = _exp_ad(g, xi)
        resid = (target - cur).graded(k + 1)
        if resid.is_zero():
            continue
        # solve [h, x_i] = resid with h in L_k
        basis = lyndon_basis(ctx, k)
        words = ctx.words(k + 1)
        cols: Matrix = []
        for w in words:
            row = []
            for b in basis:
                row.append(commutator(b, xi).terms.get(w, Fraction(0)))
            cols.append(row)
        rhs = [resid.terms.get(w, Fraction(0)) for w in words]
        sol = solve(cols, rhs)
        if sol is None:
            return None, k + 1
        h = NCPoly.zero(ctx)
        for coef, b in zip(sol, basis):
            h = h + b.scale(coef)
        g = g + h
    if _exp_ad(g, xi) != target:
        return None, ctx.N
    return g, None


def _exp_ad(g: NCPoly, a: NCPoly) -> NCPoly:
    out = a
    term = a
    k = 1
    while True:
        term = commutator(g, term).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out + term
        k += 1
    return out


def is_special(theta: Expansion) -> SpecialReport:
    """Check the group-like, leading-term, tangential and boundary
    conditions, reporting the first failing degree of the last two."""
    ctx = theta.ctx
    glike = all(is_grouplike(g) for g in theta.images)
    leading = all(
        theta.images[i - 1].graded(1) == NCPoly.gen(ctx, i) for i in range(1, ctx.n + 1)
    )
    conjugators: list[NCPoly] = []
    tang = True
    tang_fail = None
    for i in range(1, ctx.n + 1):
        lam = nc_log(theta.images[i - 1])
        g, fail = _conjugator_for(ctx, i, lam)
        if g is None:
            tang = False
            tang_fail = fail
            break
        conjugators.append(g)
    total = NCPoly.zero(ctx)
    for i in range(1, ctx.n + 1):
        total = total + NCPoly.gen(ctx, i)
    boundary_target = nc_exp(total)  # exp(-x_0)
    prod = NCPoly.unit(ctx)
    for g in theta.images:
        prod = nc_mul(prod, g)
    diff = prod - boundary_target
    special = diff.is_zero()
    special_fail = None if special else diff.min_degree()
    return SpecialReport(
        group_like=glike,
        leading_ok=leading,
        tangential=tang,
        tangential_fail_degree=tang_fail,
        special=special,
        special_fail_degree=special_fail,
        conjugators=conjugators if tang else None,
    )


# -- muF right-hand side -------------------------------------------------


def mu_special_rhs(a: NCPoly, s_tensor: TensorPoly, g_tensor: TensorPoly) -> CycMixLeft:
    """mu_alg(a) + |s''| (x) a s' - |s'' a| (x) s' + |g'| (x) [a, g'']."""
    ctx = a.ctx
    out = mu_alg(a)
    for (p, q), c in s_tensor.terms.items():
        P = NCPoly.word(ctx, p)
        Q = NCPoly.word(ctx, q)
        for kw, cc in project(Q).terms.items():
            for ww, c2 in nc_mul(a, P).terms.items():
                if len(kw) + len(ww) <= ctx.N:
                    out = out + CycMixLeft(ctx, {(kw, ww): c * cc * c2})
        for kw, cc in project(nc_mul(Q, a)).terms.items():
            for ww, c2 in P.terms.items():
                if len(kw) + len(ww) <= ctx.N:
                    out = out - CycMixLeft(ctx, {(kw, ww): c * cc * c2})
    for (p, q), c in g_tensor.terms.items():
        P = NCPoly.word(ctx, p)
        Q = NCPoly.word(ctx, q)
        for kw, cc in project(P).terms.items():
            for ww, c2 in commutator(a, Q).terms.items():
                if len(kw) + len(ww) <= ctx.N:
                    out = out + CycMixLeft(ctx, {(kw, ww): c * cc * c2})
    return out


def g_sweedler(ctx: Context, g: Series) -> TensorPoly:
    """tilde-coproduct of g(-x_0); companion to ``s_sweedler``."""
    return s_sweedler(ctx, g)


# -- sampling and transfer checks ----------------------------------------


def reduced_words(n: int, max_len: int) -> list[FWord]:
    """All reduced words of length <= max_len (the empty word included)."""
    letters = [i for i in range(1, n + 1)] + [-i for i in range(1, n + 1)]
    out: list[FWord] = [()]
    for length in range(1, max_len + 1):
        for tup in itertools.product(letters, repeat=length):
            w = w_reduce(tup)
            if len(w) == length:
                out.append(w)
    return out


def random_reduced_word(n: int, length: int, rng: random.Random) -> FWord:
    letters = [i for i in range(1, n + 1)] + [-i for i in range(1, n + 1)]
    w: list[int] = []
    while len(w) < length:
        a = rng.choice(letters)
        if w and w[-1] == -a:
            continue
        w.append(a)
    return tuple(w)


def _trunc_terms(terms: dict, degree: int) -> dict:
    out = {}
    for k, v in terms.items():
        d = len(k[0]) + len(k[1]) if isinstance(k[0], tuple) else len(k)
        if d <= degree:
            out[k] = v
    return out


@dataclass
class TransferResult:
    check: str
    theta: str
    target: str
    samples: int
    seed: int | None
    status: str
    first_failure: dict | None = None

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "theta": self.theta,
            "target": self.target,
            "samples": self.samples,
            "seed": self.seed,
            "status": self.status,
            "first_failure": self.first_failure,
        }


def transfer_check(
    theta: Expansion,
    target: str,
    db: DoubleBracket | None = None,
    *,
    word_samples: list[FWord] | None = None,
    pair_samples: list[tuple[FWord, FWord]] | None = None,
    compare_degree: int | None = None,
    seed: int | None = None,
    extra: dict | None = None,
) -> TransferResult:
    """Compare a transferred operation against an algebraic target.

    Targets: ``kappa`` (needs db), ``mu`` / ``mu_star`` / ``delta_plus``
    (refined/ordinary divergence of db), ``mu_special`` (the closed form
    for special expansions; pass s/g tensors in ``extra``),
    ``delta_alg``, ``bracket_kks`` (needs db = the KKS bracket).

    Divergence-type targets are exact only below the truncation degree,
    so ``compare_degree`` defaults to N-1 for them and N for kappa.
    """
    ctx = theta.ctx
    ops = GrpOps(ctx.n)
    n = ctx.n
    failures: dict | None = None
    count = 0

    def fail(sample, got, want):
        nonlocal failures
        if failures is None:
            failures = {
                "sample": repr(sample),
                "lhs": repr(got),
                "rhs": repr(want),
            }

    if target == "kappa":
        deg = ctx.N if compare_degree is None else compare_degree
        assert db is not None
        for x, y in pair_samples or []:
            count += 1
            lhs = expand_gr_tensor(theta, kappa_words(n, x, y))
            rhs = db_eval(db, _expand_word(theta, x), _expand_word(theta, y))
            if _trunc_terms(lhs.terms, deg) != _trunc_terms(rhs.terms, deg):
                fail((x, y), lhs, rhs)
    elif target == "mu":
        deg = ctx.N - 1 if compare_degree is None else compare_degree
        assert db is not None
        for w in word_samples or []:
            count += 1
            lhs = expand_mixlg(theta, ops.mu_word(w))
            rhs = db_tdivT(db, _expand_word(theta, w))[0]
            if _trunc_terms(lhs.terms, deg) != _trunc_terms(rhs.terms, deg):
                fail(w, lhs, rhs)
    elif target == "mu_star":
        deg = ctx.N - 1 if compare_degree is None else compare_degree
        assert db is not None
        for w in word_samples or []:
            count += 1
            lhs = expand_mixgl(theta, ops.mu_star_word(w))
            rhs = db_tdivT(db, _expand_word(theta, w))[1]
            if _trunc_terms(lhs.terms, deg) != _trunc_terms(rhs.terms, deg):
                fail(w, lhs, rhs)
    elif target == "delta_plus":
        deg = ctx.N - 1 if compare_degree is None else compare_degree
        assert db is not None
        for w in word_samples or []:
            count += 1
            lhs = expand_loop_tensor(theta, ops.delta_plus_word(w))
            rhs = -db_tdiv(db, project(_expand_word(theta, w)))
            if _trunc_terms(lhs.terms, deg) != _trunc_terms(rhs.terms, deg):
                fail(w, lhs, rhs)
    elif target == "mu_special":
        deg = ctx.N - 1 if compare_degree is None else compare_degree
        st = extra["s_tensor"]
        gt = extra["g_tensor"]
        for w in word_samples or []:
            count += 1
            lhs = expand_mixlg(theta, ops.mu_word(w))
            rhs = mu_special_rhs(_expand_word(theta, w), st, gt)
            if _trunc_terms(lhs.terms, deg) != _trunc_terms(rhs.terms, deg):
                fail(w, lhs, rhs)
    elif target == "delta_alg":
        deg = ctx.N - 1 if compare_degree is None else compare_degree
        for w in word_samples or []:
            count += 1
            lhs = expand_loop_tensor(theta, ops.delta_plus_word(w))
            rhs = delta_alg(project(_expand_word(theta, w)))
            if _trunc_terms(lhs.terms, deg) != _trunc_terms(rhs.terms, deg):
                fail(w, lhs, rhs)
    elif target == "bracket_kks":
        deg = ctx.N - 1 if compare_degree is None else compare_degree
        assert db is not None
        for x, y in pair_samples or []:
            count += 1
            lhs = expand_cyc(
                theta, goldman_minus(LoopElt.of_word(n, x), LoopElt.of_word(n, y))
            )
            rhs = db_bracket(
                db,
                project(_expand_word(theta, x)),
                project(_expand_word(theta, y)),
            )
            lt = {k: v for k, v in lhs.terms.items() if len(k) <= deg}
            rt = {k: v for k, v in rhs.terms.items() if len(k) <= deg}
            if lt != rt:
                fail((x, y), lhs, rhs)
    else:
        raise ValueError(f"unknown transfer target {target!r}")

    return TransferResult(
        check=f"transfer:{target}",
        theta=theta.name,
        target=(db.name if db is not None else target),
        samples=count,
        seed=seed,
        status="pass" if failures is None else "fail",
        first_failure=failures,
    )
