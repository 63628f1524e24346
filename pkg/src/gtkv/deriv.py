"""Derivations of the free algebra and their tangential/double refinements.

Conventions used throughout:

* A ``Derivation`` is stored by its values on generators and extended by
  the Leibniz rule.
* A ``TDerivation`` u = (u_1, .., u_n) acts through rho(u): x_i -> [x_i, u_i].
* A ``DoubleDerivation`` phi maps A -> A (x) A and obeys the Leibniz rule
  for the outer bimodule structure; it is stored by its generator table.
* A ``TDoubleDerivation`` is a coefficient table (C_1, .., C_n), encoding
  sum_i c'_i (ad_{x_i} d_i) c''_i in the basis ad_{x_i} d_i of the
  tangential sub-bimodule; the representation is unique.
* A ``TAutElement`` is an n-tuple of group-like elements F_i; it acts as
  the algebra automorphism x_i -> F_i^{-1} x_i F_i and multiplies by
  (F.G)_i = F_i (rho(F) G_i).
"""

from __future__ import annotations

from fractions import Fraction

from .cyclic import CycMixLeft, CyclicPoly, CycTensor, project
from .ncalg import (
    EMPTY,
    Context,
    NCPoly,
    TensorPoly,
    Word,
    commutator,
    grouplike_inverse,
    is_grouplike,
    is_primitive,
    nc_exp,
    nc_log,
    nc_mul,
    tensor,
)


def partial(a: NCPoly, i: int) -> TensorPoly:
    """The i-th basic double derivation: d_i(x_j) = delta_ij 1 (x) 1."""
    t: dict = {}
    for w, c in a.terms.items():
        for j, letter in enumerate(w):
            if letter == i:
                k = (w[:j], w[j + 1 :])
                s = t.get(k, 0) + c
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
    out = TensorPoly(a.ctx)
    out.terms = t
    return out


class Derivation:
    """Derivation of A given by generator values."""

    __slots__ = ("ctx", "values")

    def __init__(self, ctx: Context, values: list[NCPoly]):
        if len(values) != ctx.n:
            raise ValueError("need one value per generator")
        self.ctx = ctx
        self.values = list(values)

    @staticmethod
    def zero(ctx: Context) -> "Derivation":
        return Derivation(ctx, [NCPoly.zero(ctx)] * ctx.n)

    def __call__(self, a: NCPoly) -> NCPoly:
        return der_apply(self, a)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.ctx, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.ctx, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c) -> "Derivation":
        return Derivation(self.ctx, [v.scale(c) for v in self.values])

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Derivation)
            and self.ctx == other.ctx
            and self.values == other.values
        )


def der_apply(u: Derivation, a: NCPoly) -> NCPoly:
    """Leibniz extension of the generator table."""
    ctx = a.ctx
    out = NCPoly.zero(ctx)
    for w, c in a.terms.items():
        for j, letter in enumerate(w):
            v = u.values[letter - 1]
            if v.is_zero():
                continue
            left, right = w[:j], w[j + 1 :]
            piece = nc_mul(nc_mul(NCPoly.word(ctx, left), v), NCPoly.word(ctx, right))
            out = out + piece.scale(c)
    return out


def der_bracket(u: Derivation, v: Derivation) -> Derivation:
    """[u, v] as a derivation, via generator values."""
    vals = [der_apply(u, v.values[i]) - der_apply(v, u.values[i]) for i in range(u.ctx.n)]
    return Derivation(u.ctx, vals)


def der_tensor(u: Derivation, t: TensorPoly) -> TensorPoly:
    """Diagonal action u(a) (x) b + a (x) u(b)."""
    ctx = t.ctx
    out = TensorPoly.zero(ctx)
    for (a, b), c in t.terms.items():
        ua = der_apply(u, NCPoly.word(ctx, a))
        ub = der_apply(u, NCPoly.word(ctx, b))
        out = out + (tensor(ua, NCPoly.word(ctx, b)) + tensor(NCPoly.word(ctx, a), ub)).scale(c)
    return out


def der_cyc(u: Derivation, c: CyclicPoly) -> CyclicPoly:
    """Induced action on |A|."""
    out = CyclicPoly(c.ctx)
    for w, coef in c.terms.items():
        out = out + project(der_apply(u, NCPoly.word(c.ctx, w))).scale(coef)
    return out


def der_cyctensor(u: Derivation, t: CycTensor) -> CycTensor:
    """Diagonal action on |A| (x) |A|."""
    ctx = t.ctx
    out = CycTensor(ctx)
    for (a, b), c in t.terms.items():
        ua = project(der_apply(u, NCPoly.word(ctx, a)))
        ub = project(der_apply(u, NCPoly.word(ctx, b)))
        for w, cc in ua.terms.items():
            out = out + CycTensor(ctx, {(w, b): cc * c})
        for w, cc in ub.terms.items():
            out = out + CycTensor(ctx, {(a, w): cc * c})
    return out


def der_mixl(u: Derivation, t: CycMixLeft) -> CycMixLeft:
    """Diagonal action on |A| (x) A."""
    ctx = t.ctx
    out = CycMixLeft(ctx)
    for (a, b), c in t.terms.items():
        ua = project(der_apply(u, NCPoly.word(ctx, a)))
        ub = der_apply(u, NCPoly.word(ctx, b))
        for w, cc in ua.terms.items():
            out = out + CycMixLeft(ctx, {(w, b): cc * c})
        for w, cc in ub.terms.items():
            out = out + CycMixLeft(ctx, {(a, w): cc * c})
    return out


class TDerivation:
    """Tangential derivation: an n-tuple of algebra elements."""

    __slots__ = ("ctx", "components")

    def __init__(self, ctx: Context, components: list[NCPoly]):
        if len(components) != ctx.n:
            raise ValueError("need n components")
        self.ctx = ctx
        self.components = list(components)

    @staticmethod
    def zero(ctx: Context) -> "TDerivation":
        return TDerivation(ctx, [NCPoly.zero(ctx)] * ctx.n)

    @staticmethod
    def q(ctx: Context, i: int) -> "TDerivation":
        """The kernel generator q_i = (0, .., x_i, .., 0)."""
        comps = [NCPoly.zero(ctx) for _ in range(ctx.n)]
        comps[i - 1] = NCPoly.gen(ctx, i)
        return TDerivation(ctx, comps)

    def __add__(self, other: "TDerivation") -> "TDerivation":
        return TDerivation(self.ctx, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "TDerivation") -> "TDerivation":
        return TDerivation(self.ctx, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "TDerivation":
        return self.scale(-1)

    def scale(self, c) -> "TDerivation":
        return TDerivation(self.ctx, [v.scale(c) for v in self.components])

    def graded(self, d: int) -> "TDerivation":
        return TDerivation(self.ctx, [v.graded(d) for v in self.components])

    def degree(self) -> int:
        return max((v.degree() for v in self.components), default=-1)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.components)

    def is_lie(self) -> bool:
        return all(v.is_zero() or is_primitive(v) for v in self.components)

    def is_special(self) -> bool:
        """sum_i [x_i, u_i] = 0, i.e. the boundary class is annihilated."""
        s = NCPoly.zero(self.ctx)
        for i, v in enumerate(self.components, start=1):
            s = s + commutator(NCPoly.gen(self.ctx, i), v)
        return s.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TDerivation)
            and self.ctx == other.ctx
            and self.components == other.components
        )


def rho(u: TDerivation) -> Derivation:
    """x_i -> [x_i, u_i]."""
    vals = [
        commutator(NCPoly.gen(u.ctx, i + 1), u.components[i]) for i in range(u.ctx.n)
    ]
    return Derivation(u.ctx, vals)


def tder_bracket(u: TDerivation, v: TDerivation) -> TDerivation:
    """[u, v]_i = rho(u)(v_i) - rho(v)(u_i) + [u_i, v_i]."""
    ru, rv = rho(u), rho(v)
    comps = [
        der_apply(ru, v.components[i])
        - der_apply(rv, u.components[i])
        + commutator(u.components[i], v.components[i])
        for i in range(u.ctx.n)
    ]
    return TDerivation(u.ctx, comps)


def tder_cyc(u: TDerivation, c: CyclicPoly) -> CyclicPoly:
    return der_cyc(rho(u), c)


def tder_cyctensor(u: TDerivation, t: CycTensor) -> CycTensor:
    return der_cyctensor(rho(u), t)


class DoubleDerivation:
    """Double derivation stored by its generator table phi(x_i)."""

    __slots__ = ("ctx", "table")

    def __init__(self, ctx: Context, table: list[TensorPoly]):
        if len(table) != ctx.n:
            raise ValueError("need n table entries")
        self.ctx = ctx
        self.table = list(table)

    @staticmethod
    def zero(ctx: Context) -> "DoubleDerivation":
        return DoubleDerivation(ctx, [TensorPoly.zero(ctx)] * ctx.n)

    @staticmethod
    def basic(ctx: Context, i: int) -> "DoubleDerivation":
        """d_i, with d_i(x_j) = delta_ij 1 (x) 1."""
        table = [TensorPoly.zero(ctx) for _ in range(ctx.n)]
        table[i - 1] = TensorPoly.unit(ctx)
        return DoubleDerivation(ctx, table)

    @staticmethod
    def phi0(ctx: Context) -> "DoubleDerivation":
        """sum_i ad_{x_i} d_i, acting as a -> 1 (x) a - a (x) 1."""
        table = []
        for i in range(1, ctx.n + 1):
            xi = (i,)
            table.append(TensorPoly(ctx, {(EMPTY, xi): Fraction(1), (xi, EMPTY): Fraction(-1)}))
        return DoubleDerivation(ctx, table)

    def __add__(self, other: "DoubleDerivation") -> "DoubleDerivation":
        return DoubleDerivation(self.ctx, [a + b for a, b in zip(self.table, other.table)])

    def __sub__(self, other: "DoubleDerivation") -> "DoubleDerivation":
        return DoubleDerivation(self.ctx, [a - b for a, b in zip(self.table, other.table)])

    def scale(self, c) -> "DoubleDerivation":
        return DoubleDerivation(self.ctx, [t.scale(c) for t in self.table])

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.table)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DoubleDerivation)
            and self.ctx == other.ctx
            and self.table == other.table
        )


def dd_apply(phi: DoubleDerivation, a: NCPoly) -> TensorPoly:
    """Outer Leibniz extension: phi(w) = sum_j w_<j phi(w_j) w_>j."""
    ctx = a.ctx
    N = ctx.N
    t: dict = {}
    for w, c in a.terms.items():
        for j, letter in enumerate(w):
            entry = phi.table[letter - 1]
            if entry.is_zero():
                continue
            left, right = w[:j], w[j + 1 :]
            base = len(left) + len(right)
            for (p, q), cc in entry.terms.items():
                if base + len(p) + len(q) > N:
                    continue
                k = (left + p, q + right)
                s = t.get(k, 0) + c * cc
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
    out = TensorPoly(ctx)
    out.terms = t
    return out


def dd_collapse(phi: DoubleDerivation) -> Derivation:
    """|phi|: a -> phi'(a) phi''(a), i.e. multiply the table legs."""
    return Derivation(phi.ctx, [t.collapse() for t in phi.table])


def dd_on_cyclic(phi: DoubleDerivation, c: CyclicPoly) -> NCPoly:
    """The induced map |A| -> A: |a| -> phi''(a) phi'(a)."""
    out = NCPoly.zero(c.ctx)
    for w, coef in c.terms.items():
        out = out + dd_apply(phi, NCPoly.word(c.ctx, w)).collapse_swapped().scale(coef)
    return out


class TDoubleDerivation:
    """Tangential double derivation sum_i c'_i (ad_{x_i} d_i) c''_i,
    stored by the coefficient tensors C_i = c'_i (x) c''_i."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Context, coeffs: list[TensorPoly]):
        if len(coeffs) != ctx.n:
            raise ValueError("need n coefficient entries")
        self.ctx = ctx
        self.coeffs = list(coeffs)

    @staticmethod
    def zero(ctx: Context) -> "TDoubleDerivation":
        return TDoubleDerivation(ctx, [TensorPoly.zero(ctx)] * ctx.n)

    @staticmethod
    def basic(ctx: Context, i: int) -> "TDoubleDerivation":
        """ad_{x_i} d_i."""
        coeffs = [TensorPoly.zero(ctx) for _ in range(ctx.n)]
        coeffs[i - 1] = TensorPoly.unit(ctx)
        return TDoubleDerivation(ctx, coeffs)

    @staticmethod
    def phi0(ctx: Context) -> "TDoubleDerivation":
        return TDoubleDerivation(ctx, [TensorPoly.unit(ctx) for _ in range(ctx.n)])

    def __add__(self, other: "TDoubleDerivation") -> "TDoubleDerivation":
        return TDoubleDerivation(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TDoubleDerivation") -> "TDoubleDerivation":
        return TDoubleDerivation(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "TDoubleDerivation":
        return TDoubleDerivation(self.ctx, [t.scale(c) for t in self.coeffs])

    def sandwich(self, a: NCPoly, b: NCPoly) -> "TDoubleDerivation":
        """Bimodule action a . psi . b on the coefficients."""
        ua = tensor(a, NCPoly.unit(self.ctx))
        ub = tensor(NCPoly.unit(self.ctx), b)
        return TDoubleDerivation(self.ctx, [ua * t * ub for t in self.coeffs])

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TDoubleDerivation)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )


def tdd_to_dd(psi: TDoubleDerivation) -> DoubleDerivation:
    """The inclusion into plain double derivations.

    The basis element ad_{x_j} d_j sandwiched by c' (x) c'' sends x_j to
    c'' (x) c' x_j - x_j c'' (x) c'.
    """
    ctx = psi.ctx
    table = []
    for j in range(1, ctx.n + 1):
        entry = TensorPoly.zero(ctx)
        C = psi.coeffs[j - 1]
        xj = NCPoly.gen(ctx, j)
        unit = NCPoly.unit(ctx)
        sw = C.swap()
        entry = sw * tensor(unit, xj) - tensor(xj, unit) * sw
        table.append(entry)
    return DoubleDerivation(ctx, table)


def tdd_collapse(psi: TDoubleDerivation) -> TDerivation:
    """|psi| = -(c''_1 c'_1, .., c''_n c'_n)."""
    comps = [(-t.swap().collapse()) for t in psi.coeffs]
    return TDerivation(psi.ctx, comps)


def tdd_act(u: TDerivation, psi: TDoubleDerivation) -> TDoubleDerivation:
    """Action of a tangential derivation on the tangential sub-bimodule.

    Coefficientwise: u(c') (x) c'' + c' (x) u(c'') + swap(psi(u_i))
    + c' (x) u_i c'' - c' u_i (x) c''.
    """
    ctx = psi.ctx
    unit = NCPoly.unit(ctx)
    ru = rho(u)
    phi = tdd_to_dd(psi)
    out = []
    for i in range(ctx.n):
        C = psi.coeffs[i]
        ui = u.components[i]
        term = der_tensor(ru, C)
        term = term + dd_apply(phi, ui).swap()
        term = term + tensor(unit, ui) * C  # c' (x) u_i c''
        term = term - C * tensor(ui, unit)  # c' u_i (x) c''
        out.append(term)
    return TDoubleDerivation(ctx, out)


# -- tangential automorphisms -----------------------------------------


class TAutElement:
    """n-tuple of group-like elements, acting by x_i -> F_i^{-1} x_i F_i."""

    __slots__ = ("ctx", "entries", "_images", "_subst_cache")

    def __init__(self, ctx: Context, entries: list[NCPoly], check: bool = True):
        if len(entries) != ctx.n:
            raise ValueError("need n entries")
        if check:
            for g in entries:
                if g.eps() != 1:
                    raise ValueError("entries must have augmentation 1")
        self.ctx = ctx
        self.entries = list(entries)
        self._images: list[NCPoly] | None = None
        self._subst_cache: dict[Word, NCPoly] = {}

    @staticmethod
    def identity(ctx: Context) -> "TAutElement":
        return TAutElement(ctx, [NCPoly.unit(ctx)] * ctx.n)

    @staticmethod
    def from_logs(logs: list[NCPoly]) -> "TAutElement":
        return TAutElement(logs[0].ctx, [nc_exp(f) for f in logs])

    def logs(self) -> list[NCPoly]:
        return [nc_log(g) for g in self.entries]

    def is_identity(self) -> bool:
        unit = NCPoly.unit(self.ctx)
        return all(g == unit for g in self.entries)

    def is_over_lie(self) -> bool:
        return all(is_primitive(nc_log(g)) for g in self.entries)

    def images(self) -> list[NCPoly]:
        """Generator images of the automorphism rho(F)."""
        if self._images is None:
            imgs = []
            for i, g in enumerate(self.entries, start=1):
                gi = grouplike_inverse(g)
                imgs.append(nc_mul(nc_mul(gi, NCPoly.gen(self.ctx, i)), g))
            self._images = imgs
        return self._images

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TAutElement)
            and self.ctx == other.ctx
            and self.entries == other.entries
        )


def subst(a: NCPoly, images: list[NCPoly], ctx_out: Context | None = None,
          cache: dict | None = None) -> NCPoly:
    """Algebra map determined by x_i -> images[i-1] applied to a."""
    ctx = ctx_out or images[0].ctx
    out = NCPoly.zero(ctx)
    for w, c in a.terms.items():
        if cache is not None and w in cache:
            p = cache[w]
        else:
            p = NCPoly.unit(ctx)
            for letter in w:
                p = nc_mul(p, images[letter - 1])
            if cache is not None:
                cache[w] = p
        out = out + p.scale(c)
    return out


def taut_apply(F: TAutElement, a: NCPoly) -> NCPoly:
    """rho(F) applied to an algebra element."""
    return subst(a, F.images(), cache=F._subst_cache)


def taut_apply_cyc(F: TAutElement, c: CyclicPoly) -> CyclicPoly:
    out = CyclicPoly(c.ctx)
    for w, coef in c.terms.items():
        out = out + project(taut_apply(F, NCPoly.word(c.ctx, w))).scale(coef)
    return out


def taut_apply_cyctensor(F: TAutElement, t: CycTensor) -> CycTensor:
    ctx = t.ctx
    out = CycTensor(ctx)
    for (a, b), c in t.terms.items():
        pa = project(taut_apply(F, NCPoly.word(ctx, a)))
        pb = project(taut_apply(F, NCPoly.word(ctx, b)))
        for wa, ca in pa.terms.items():
            for wb, cb in pb.terms.items():
                if len(wa) + len(wb) <= ctx.N:
                    out = out + CycTensor(ctx, {(wa, wb): c * ca * cb})
    return out


def taut_mul(F: TAutElement, G: TAutElement) -> TAutElement:
    """(F.G)_i = F_i (rho(F) G_i)."""
    entries = [nc_mul(F.entries[i], taut_apply(F, G.entries[i])) for i in range(F.ctx.n)]
    return TAutElement(F.ctx, entries, check=False)


def taut_inv(F: TAutElement) -> TAutElement:
    """Group inverse: H_i = rho(F)^{-1}(F_i^{-1})."""
    ctx = F.ctx
    imgs = F.images()
    # invert the automorphism degree by degree
    inv_imgs = [NCPoly.gen(ctx, i) for i in range(1, ctx.n + 1)]
    for _ in range(ctx.N):
        nxt = []
        for i in range(ctx.n):
            err = subst(inv_imgs[i], imgs) - NCPoly.gen(ctx, i + 1)
            nxt.append(inv_imgs[i] - err)
        inv_imgs = nxt
    cache: dict = {}
    entries = [subst(grouplike_inverse(F.entries[i]), inv_imgs, cache=cache) for i in range(ctx.n)]
    return TAutElement(ctx, entries, check=False)


def taut_exp(u: TDerivation) -> TAutElement:
    """Exponential of a tangential derivation.

    The one-parameter family F(t) = exp(tu) satisfies
    dF_i/dt = F_i . (exp(t rho(u)) u_i); integrating the formal flow in t
    and evaluating at t = 1 gives the group element.
    """
    ctx = u.ctx
    if not u.is_lie():
        raise ValueError("taut_exp needs primitive components")
    ru = rho(u)
    entries = []
    for i in range(ctx.n):
        # g_k = rho(u)^k (u_i) / k!
        g: list[NCPoly] = [u.components[i]]
        k = 1
        while True:
            nxt = der_apply(ru, g[-1]).scale(Fraction(1, k))
            if nxt.is_zero():
                break
            g.append(nxt)
            k += 1
        # f_0 = 1, (m+1) f_{m+1} = sum_{j+k=m} f_j g_k
        f: list[NCPoly] = [NCPoly.unit(ctx)]
        for m in range(ctx.N):
            acc = NCPoly.zero(ctx)
            for k in range(min(m, len(g) - 1) + 1):
                acc = acc + nc_mul(f[m - k], g[k])
            f.append(acc.scale(Fraction(1, m + 1)))
        total = NCPoly.zero(ctx)
        for p in f:
            total = total + p
        entries.append(total)
    return TAutElement(ctx, entries, check=False)


def taut_log(F: TAutElement) -> TDerivation:
    """Inverse of taut_exp, computed degree by degree."""
    ctx = F.ctx
    target = [nc_log(g) for g in F.entries]
    u = TDerivation.zero(ctx)
    for k in range(1, ctx.N + 1):
        E = taut_exp(u)
        comps = list(u.components)
        for i in range(ctx.n):
            d = (target[i] - nc_log(E.entries[i])).graded(k)
            comps[i] = comps[i] + d
        u = TDerivation(ctx, comps)
    if taut_exp(u).entries != F.entries:
        raise ArithmeticError("taut_log failed to converge")
    return u


def taut_ad(F: TAutElement, u: TDerivation) -> TDerivation:
    """Adjoint action Ad_F(u) = log(F exp(u) F^{-1})."""
    return taut_log(taut_mul(taut_mul(F, taut_exp(u)), taut_inv(F)))
