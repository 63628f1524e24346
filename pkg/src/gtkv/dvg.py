"""Divergence cocycles and their group-level integrations.

Five related maps live here:

* ``div_big``     Der(A)  -> |A| (x) |A|      (sum_i || d_i(u(x_i)) ||)
* ``c_coeff``     tDer(A) -> |A|              (u -> |u_i|)
* ``tdiv``        tDer(A) -> |A| (x) |A|
* ``div_small``   tDer(L) -> |A|
* ``tdivT_pair``  tangential double derivations -> (|A| (x) A, A (x) |A|)

and the group 1-cocycles ``j_int`` / ``tJ_int`` integrating div_small and
tdiv along the exponential map, characterized by C(fg) = C(f) + f.C(g)
and C(exp u) = ((e^u - 1)/u) . c(u).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .cyclic import (
    CycMixLeft,
    CycMixRight,
    CyclicPoly,
    CycTensor,
    cyc_tensor_of,
    mixl_of,
    mixr_of,
    project,
    tilde_delta_cyc,
)
from .deriv import (
    Derivation,
    TAutElement,
    TDerivation,
    TDoubleDerivation,
    partial,
    rho,
    taut_apply_cyc,
    taut_exp,
    taut_log,
    taut_mul,
    tder_cyc,
    tder_cyctensor,
)
from .ncalg import EMPTY, NCPoly, TensorPoly, is_primitive, tensor


def div_big(u: Derivation) -> CycTensor:
    """Divergence of a derivation of A."""
    ctx = u.ctx
    out = CycTensor(ctx)
    for i in range(1, ctx.n + 1):
        out = out + cyc_tensor_of(partial(u.values[i - 1], i))
    return out


def c_coeff(u: TDerivation, i: int) -> CyclicPoly:
    """The class of the i-th component."""
    return project(u.components[i - 1])


def tdiv(u: TDerivation) -> CycTensor:
    """Tangential divergence, by the closed formula
    sum_i | x_i (d_i u_i) - (d_i u_i) x_i |."""
    ctx = u.ctx
    unit = NCPoly.unit(ctx)
    out = CycTensor(ctx)
    for i in range(1, ctx.n + 1):
        d = partial(u.components[i - 1], i)
        xi = NCPoly.gen(ctx, i)
        out = out + cyc_tensor_of(tensor(xi, unit) * d - d * tensor(unit, xi))
    return out


def tdiv_via_definition(u: TDerivation) -> CycTensor:
    """Div(rho(u)) + sum_i (|u_i| (x) one - one (x) |u_i|); test oracle."""
    ctx = u.ctx
    out = div_big(rho(u))
    for i in range(1, ctx.n + 1):
        ci = c_coeff(u, i)
        for w, c in ci.terms.items():
            out = out + CycTensor(ctx, {(w, EMPTY): c, (EMPTY, w): -c})
    return out


def right_factor(a: NCPoly, i: int) -> NCPoly:
    """The a^i of the unique decomposition a = a^0 + sum_i a^i x_i."""
    t = {}
    for w, c in a.terms.items():
        if w and w[-1] == i:
            t[w[:-1]] = c
    return NCPoly(a.ctx, t)


def div_small(u: TDerivation) -> CyclicPoly:
    """Divergence on tDer(L): sum_i | x_i (u_i)^i |."""
    ctx = u.ctx
    for v in u.components:
        if not (v.is_zero() or is_primitive(v)):
            raise ValueError("div_small needs primitive components")
    out = CyclicPoly(ctx)
    for i in range(1, ctx.n + 1):
        xi = NCPoly.gen(ctx, i)
        out = out + project(xi * right_factor(u.components[i - 1], i))
    return out


def tdivT_pair(psi: TDoubleDerivation) -> tuple[CycMixLeft, CycMixRight]:
    """The two one-sided refinements of the tangential divergence.

    left  = (| | (x) 1) sum_i (1 (x) c'_i x_i - x_i (x) c'_i)(d_i c''_i)
    right = (1 (x) | |) sum_i (d_i c'_i)(c''_i (x) x_i - x_i c''_i (x) 1)
    """
    ctx = psi.ctx
    unit = NCPoly.unit(ctx)
    left_acc = TensorPoly.zero(ctx)
    right_acc = TensorPoly.zero(ctx)
    for i in range(1, ctx.n + 1):
        xi = NCPoly.gen(ctx, i)
        C = psi.coeffs[i - 1]
        # termwise, to keep the pairing between c' and c''
        for (p, q), coef in C.terms.items():
            cP = NCPoly.word(ctx, p, coef)
            cQ = NCPoly.word(ctx, q)
            dq = partial(cQ, i)
            left_acc = left_acc + (tensor(unit, cP * xi) - tensor(xi, cP)) * dq
            dp = partial(cP, i)
            right_acc = right_acc + dp * (tensor(cQ, xi) - tensor(xi * cQ, unit))
    return mixl_of(left_acc), mixr_of(right_acc)


def tdd_tdiv(psi: TDoubleDerivation) -> CycTensor:
    """tdiv of the collapsed tangential derivation; gluing oracle."""
    left, right = tdivT_pair(psi)
    return left.close_right() + right.close_left()


# -- integration -------------------------------------------------------


def j_int(F: TAutElement) -> CyclicPoly:
    """Group cocycle integrating div_small, for F in TAut(L)."""
    u = taut_log(F)
    return j_of_exp(u)


def j_of_exp(u: TDerivation) -> CyclicPoly:
    """j(exp u) = sum_k u^k . div(u) / (k+1)!."""
    d = div_small(u)
    out = CyclicPoly(u.ctx)
    term = d
    k = 0
    while not term.is_zero():
        out = out + term.scale(Fraction(1, factorial(k + 1)))
        term = tder_cyc(u, term)
        k += 1
        if k > u.ctx.N + 1:
            break
    return out


def j_of_product(factors: list[TDerivation]) -> CyclicPoly:
    """j(exp(u_1) exp(u_2) ...) by the cocycle rule C(fg) = C(f) + f.C(g)."""
    if not factors:
        raise ValueError("empty product")
    ctx = factors[0].ctx
    out = CyclicPoly(ctx)
    prefix: TAutElement | None = None
    for u in factors:
        piece = j_of_exp(u)
        if prefix is not None:
            piece = taut_apply_cyc(prefix, piece)
        out = out + piece
        prefix = taut_exp(u) if prefix is None else taut_mul(prefix, taut_exp(u))
    return out


def tJ_int(F: TAutElement) -> CycTensor:
    """Group cocycle integrating tdiv; equals tilde_delta of j on TAut(L)."""
    return tilde_delta_cyc(j_int(F))


def tJ_of_exp(u: TDerivation) -> CycTensor:
    """Independent series route: sum_k u^k . tdiv(u) / (k+1)!."""
    d = tdiv(u)
    out = CycTensor(u.ctx)
    term = d
    k = 0
    while not term.is_zero():
        out = out + term.scale(Fraction(1, factorial(k + 1)))
        term = tder_cyctensor(u, term)
        k += 1
        if k > u.ctx.N + 1:
            break
    return out
