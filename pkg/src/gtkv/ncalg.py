"""Truncated free associative algebra over exact rationals.

A value of ``NCPoly`` is a finite rational linear combination of words in
the generators x_1..x_n, with every product truncated at total degree N.
The pair (n, N) lives in a ``Context``; values from different contexts
never mix.  The Hopf structure is the standard one on the free algebra:
the generators are primitive, the counit kills them, the antipode negates
them and reverses words.

Words are tuples of generator indices (1-based).  Coefficients are
``fractions.Fraction`` throughout; there is no floating point anywhere in
this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

Word = tuple[int, ...]

EMPTY: Word = ()


@dataclass(frozen=True)
class Context:
    """Generator count n >= 1 and truncation degree N >= 1."""

    n: int
    N: int

    def __post_init__(self):
        if self.n < 1 or self.N < 1:
            raise ValueError("need n >= 1 and N >= 1")

    def words(self, degree: int) -> list[Word]:
        """All words of the given degree, lexicographically."""
        return [tuple(w) for w in itertools.product(range(1, self.n + 1), repeat=degree)]

    def all_words(self, max_degree: int | None = None) -> list[Word]:
        top = self.N if max_degree is None else max_degree
        out: list[Word] = []
        for d in range(top + 1):
            out.extend(self.words(d))
        return out


def word_key(w: Word) -> tuple[int, Word]:
    # canonical term order: length, then lexicographic
    return (len(w), w)


def _check_ctx(a: "NCPoly | TensorPoly", b: "NCPoly | TensorPoly"):
    if a.ctx != b.ctx:
        raise ValueError("context mismatch")


class NCPoly:
    """Sparse element of the truncated free associative algebra."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict[Word, Fraction] | None = None):
        self.ctx = ctx
        t: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                if c and len(w) <= ctx.N:
                    t[w] = Fraction(c)
        self.terms = t

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(ctx: Context) -> "NCPoly":
        return NCPoly(ctx)

    @staticmethod
    def unit(ctx: Context, c: Fraction | int = 1) -> "NCPoly":
        return NCPoly(ctx, {EMPTY: Fraction(c)})

    @staticmethod
    def gen(ctx: Context, i: int) -> "NCPoly":
        if not 1 <= i <= ctx.n:
            raise ValueError(f"generator index {i} out of range")
        return NCPoly(ctx, {(i,): Fraction(1)})

    @staticmethod
    def word(ctx: Context, w: Word, c: Fraction | int = 1) -> "NCPoly":
        return NCPoly(ctx, {tuple(w): Fraction(c)})

    # -- inspection ---------------------------------------------------

    def coeff(self, w: Word) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    def eps(self) -> Fraction:
        """Augmentation: the coefficient of the empty word."""
        return self.terms.get(EMPTY, Fraction(0))

    def degree(self) -> int:
        """Top degree with a nonzero term (-1 for zero)."""
        return max((len(w) for w in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((len(w) for w in self.terms), default=-1)

    def graded(self, d: int) -> "NCPoly":
        return NCPoly(self.ctx, {w: c for w, c in self.terms.items() if len(w) == d})

    def truncated(self, d: int) -> "NCPoly":
        return NCPoly(self.ctx, {w: c for w, c in self.terms.items() if len(w) <= d})

    def is_zero(self) -> bool:
        return not self.terms

    # -- ring structure -----------------------------------------------

    def __add__(self, other: "NCPoly") -> "NCPoly":
        _check_ctx(self, other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, 0) + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        out = NCPoly(self.ctx)
        out.terms = t
        return out

    def __neg__(self) -> "NCPoly":
        out = NCPoly(self.ctx)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        if not c:
            return NCPoly.zero(self.ctx)
        out = NCPoly(self.ctx)
        out.terms = {w: c * v for w, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return nc_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(Fraction(1, 1) / Fraction(other))

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPoly) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=word_key):
            c = self.terms[w]
            mono = "*".join(f"x{i}" for i in w) if w else "1"
            bits.append(f"({c})" + ("" if not w else "*" + mono) if w else f"({c})")
        return " + ".join(bits)


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    """Concatenation product, truncated at N."""
    _check_ctx(a, b)
    N = a.ctx.N
    t: dict[Word, Fraction] = {}
    for wa, ca in a.terms.items():
        la = len(wa)
        for wb, cb in b.terms.items():
            if la + len(wb) > N:
                continue
            w = wa + wb
            s = t.get(w, 0) + ca * cb
            if s:
                t[w] = s
            else:
                t.pop(w, None)
    out = NCPoly(a.ctx)
    out.terms = t
    return out


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    return nc_mul(a, b) - nc_mul(b, a)


class TensorPoly:
    """Sparse element of A (x) A, truncated at total degree N.

    Multiplication is componentwise, i.e. the algebra structure of A (x) A:
    (a (x) b)(c (x) d) = ac (x) bd.  The outer/inner bimodule actions used
    for double derivations are expressed through it; see ``outer`` and
    ``inner``.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict[tuple[Word, Word], Fraction] | None = None):
        self.ctx = ctx
        t: dict[tuple[Word, Word], Fraction] = {}
        if terms:
            for k, c in terms.items():
                if c and len(k[0]) + len(k[1]) <= ctx.N:
                    t[k] = Fraction(c)
        self.terms = t

    @staticmethod
    def zero(ctx: Context) -> "TensorPoly":
        return TensorPoly(ctx)

    @staticmethod
    def unit(ctx: Context, c: Fraction | int = 1) -> "TensorPoly":
        return TensorPoly(ctx, {(EMPTY, EMPTY): Fraction(c)})

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        _check_ctx(self, other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out = TensorPoly(self.ctx)
        out.terms = t
        return out

    def __neg__(self) -> "TensorPoly":
        out = TensorPoly(self.ctx)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + (-other)

    def scale(self, c) -> "TensorPoly":
        c = Fraction(c)
        if not c:
            return TensorPoly.zero(self.ctx)
        out = TensorPoly(self.ctx)
        out.terms = {k: c * v for k, v in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, TensorPoly):
            return tp_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def swap(self) -> "TensorPoly":
        out = TensorPoly(self.ctx)
        out.terms = {(k[1], k[0]): c for k, c in self.terms.items()}
        return out

    def collapse(self) -> NCPoly:
        """Multiply the two legs: a (x) b -> ab."""
        t: dict[Word, Fraction] = {}
        for (u, v), c in self.terms.items():
            w = u + v
            s = t.get(w, 0) + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        out = NCPoly(self.ctx)
        out.terms = t
        return out

    def collapse_swapped(self) -> NCPoly:
        """a (x) b -> ba."""
        return self.swap().collapse()

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorPoly) and self.ctx == other.ctx and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for u, v in sorted(self.terms, key=lambda k: (word_key(k[0]), word_key(k[1]))):
            c = self.terms[(u, v)]
            su = "".join(f"x{i}" for i in u) or "1"
            sv = "".join(f"x{i}" for i in v) or "1"
            bits.append(f"({c})[{su}(x){sv}]")
        return " + ".join(bits)


def tensor(a: NCPoly, b: NCPoly) -> TensorPoly:
    _check_ctx(a, b)
    N = a.ctx.N
    t: dict[tuple[Word, Word], Fraction] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            if len(wa) + len(wb) <= N:
                t[(wa, wb)] = ca * cb
    out = TensorPoly(a.ctx)
    out.terms = t
    return out


def tp_mul(a: TensorPoly, b: TensorPoly) -> TensorPoly:
    """Componentwise product in A (x) A."""
    _check_ctx(a, b)
    N = a.ctx.N
    t: dict[tuple[Word, Word], Fraction] = {}
    for (u1, v1), c1 in a.terms.items():
        d1 = len(u1) + len(v1)
        for (u2, v2), c2 in b.terms.items():
            if d1 + len(u2) + len(v2) > N:
                continue
            k = (u1 + u2, v1 + v2)
            s = t.get(k, 0) + c1 * c2
            if s:
                t[k] = s
            else:
                t.pop(k, None)
    out = TensorPoly(a.ctx)
    out.terms = t
    return out


def tp_mul_op(a: TensorPoly, b: TensorPoly) -> TensorPoly:
    """Product in A (x) A^op: (a (x) b)(c (x) d) = ac (x) db."""
    _check_ctx(a, b)
    N = a.ctx.N
    t: dict[tuple[Word, Word], Fraction] = {}
    for (u1, v1), c1 in a.terms.items():
        d1 = len(u1) + len(v1)
        for (u2, v2), c2 in b.terms.items():
            if d1 + len(u2) + len(v2) > N:
                continue
            k = (u1 + u2, v2 + v1)
            s = t.get(k, 0) + c1 * c2
            if s:
                t[k] = s
            else:
                t.pop(k, None)
    out = TensorPoly(a.ctx)
    out.terms = t
    return out


def outer(c1: NCPoly, t: TensorPoly, c2: NCPoly) -> TensorPoly:
    """Outer bimodule action: c1 (a (x) b) c2 = c1 a (x) b c2."""
    return tp_mul(tp_mul(tensor(c1, NCPoly.unit(t.ctx)), t), tensor(NCPoly.unit(t.ctx), c2))


def inner(c1: NCPoly, t: TensorPoly, c2: NCPoly) -> TensorPoly:
    """Inner bimodule action: c1 * (a (x) b) * c2 = a c2 (x) c1 b."""
    return tp_mul(tp_mul(tensor(NCPoly.unit(t.ctx), c1), t), tensor(c2, NCPoly.unit(t.ctx)))


# -- Hopf structure ---------------------------------------------------


def coproduct(a: NCPoly) -> TensorPoly:
    """The shuffle-style coproduct with primitive generators."""
    ctx = a.ctx
    t: dict[tuple[Word, Word], Fraction] = {}
    for w, c in a.terms.items():
        m = len(w)
        for mask in range(1 << m):
            left = tuple(w[i] for i in range(m) if mask >> i & 1)
            right = tuple(w[i] for i in range(m) if not mask >> i & 1)
            k = (left, right)
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
    out = TensorPoly(ctx)
    out.terms = t
    return out


def antipode(a: NCPoly) -> NCPoly:
    out = NCPoly(a.ctx)
    out.terms = {w[::-1]: (-c if len(w) % 2 else c) for w, c in a.terms.items()}
    return out


def is_primitive(a: NCPoly) -> bool:
    """Degree-wise test of Delta(a) = a (x) 1 + 1 (x) a."""
    if a.eps():
        return False
    u = NCPoly.unit(a.ctx)
    return coproduct(a) == tensor(a, u) + tensor(u, a)


def is_grouplike(g: NCPoly) -> bool:
    """Truncated test of Delta(g) = g (x) g with eps(g) = 1."""
    if g.eps() != 1:
        return False
    return coproduct(g) == tensor(g, g)


# -- exponential, logarithm, BCH --------------------------------------


def nc_exp(a: NCPoly) -> NCPoly:
    """exp of an augmentation-free element, truncated at N."""
    if a.eps():
        raise ValueError("nc_exp needs eps(a) = 0")
    unit = NCPoly.unit(a.ctx)
    e = unit
    for k in range(a.ctx.N, 0, -1):
        e = unit + nc_mul(a, e).scale(Fraction(1, k))
    return e


def nc_log(g: NCPoly) -> NCPoly:
    """log of an element with eps(g) = 1, truncated at N."""
    if g.eps() != 1:
        raise ValueError("nc_log needs eps(g) = 1")
    x = g - NCPoly.unit(g.ctx)
    N = g.ctx.N
    # log(1+x) = x P(x) with P(x) = sum_{k>=0} (-1)^k x^k/(k+1), by Horner
    acc = NCPoly.unit(g.ctx, Fraction((-1) ** (N - 1), N))
    for k in range(N - 1, 0, -1):
        acc = NCPoly.unit(g.ctx, Fraction((-1) ** (k - 1), k)) + nc_mul(x, acc)
    return nc_mul(x, acc)


def grouplike_inverse(g: NCPoly) -> NCPoly:
    """Inverse of a group-like element, exp(-log g)."""
    return nc_exp(-nc_log(g))


def bch(a: NCPoly, b: NCPoly) -> NCPoly:
    """log(exp(a) exp(b)); primitive when a and b are."""
    if a.eps() or b.eps():
        raise ValueError("bch needs eps = 0 on both arguments")
    return nc_log(nc_mul(nc_exp(a), nc_exp(b)))


# -- one-variable series ----------------------------------------------


class Series:
    """Truncated power series in one variable with Fraction coefficients."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs):
        self.N = N
        cs = list(coeffs)[: N + 1]
        cs += [Fraction(0)] * (N + 1 - len(cs))
        self.coeffs = [Fraction(c) for c in cs]

    @staticmethod
    def zero(N: int) -> "Series":
        return Series(N, [])

    @staticmethod
    def const(N: int, c) -> "Series":
        return Series(N, [Fraction(c)])

    @staticmethod
    def z(N: int) -> "Series":
        return Series(N, [Fraction(0), Fraction(1)])

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.N else Fraction(0)

    def __add__(self, other: "Series") -> "Series":
        return Series(self.N, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Series") -> "Series":
        return Series(self.N, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Series":
        return Series(self.N, [-a for a in self.coeffs])

    def scale(self, c) -> "Series":
        c = Fraction(c)
        return Series(self.N, [c * a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Series):
            out = [Fraction(0)] * (self.N + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b and i + j <= self.N:
                        out[i + j] += a * b
            return Series(self.N, out)
        return self.scale(other)

    __rmul__ = __mul__

    def derivative(self) -> "Series":
        return Series(self.N, [k * self.coeffs[k] for k in range(1, self.N + 1)])

    def even_part(self) -> "Series":
        return Series(self.N, [c if k % 2 == 0 else Fraction(0) for k, c in enumerate(self.coeffs)])

    def odd_part(self) -> "Series":
        return Series(self.N, [c if k % 2 == 1 else Fraction(0) for k, c in enumerate(self.coeffs)])

    def compose_neg(self) -> "Series":
        """s(z) -> s(-z)."""
        return Series(self.N, [(-1) ** k * c for k, c in enumerate(self.coeffs)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inverse(self) -> "Series":
        """Multiplicative inverse; needs a nonzero constant term."""
        if not self.coeffs[0]:
            raise ValueError("series has no multiplicative inverse")
        inv0 = 1 / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * self.N
        for m in range(1, self.N + 1):
            out[m] = -inv0 * sum(self.coeffs[j] * out[m - j] for j in range(1, m + 1))
        return Series(self.N, out)

    def eval_poly(self, x: NCPoly) -> NCPoly:
        """Evaluate at an augmentation-free algebra element."""
        if x.eps():
            raise ValueError("series evaluation needs eps(x) = 0")
        acc = NCPoly.unit(x.ctx, self.coeffs[0])
        p = NCPoly.unit(x.ctx)
        for k in range(1, self.N + 1):
            p = nc_mul(p, x)
            if p.is_zero():
                break
            if self.coeffs[k]:
                acc = acc + p.scale(self.coeffs[k])
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Series) and self.N == other.N and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        bits = [f"({c})z^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(bits) if bits else "0"


def ad_series(f: Series, x: NCPoly, b: NCPoly) -> NCPoly:
    """Evaluate f(ad_x)(b), truncated."""
    _check_ctx(x, b)
    acc = b.scale(f[0])
    t = b
    for k in range(1, f.N + 1):
        t = commutator(x, t)
        if t.is_zero():
            break
        if f[k]:
            acc = acc + t.scale(f[k])
    return acc


def bernoulli_numbers(m: int) -> list[Fraction]:
    """B_0..B_m, first convention (B_1 = -1/2)."""
    out = [Fraction(1)]
    for k in range(1, m + 1):
        s = Fraction(0)
        for j in range(k):
            s += comb(k + 1, j) * out[j]
        out.append(-s / (k + 1))
    return out


def s_series(N: int) -> Series:
    """s(z) = 1/z - 1/(1 - e^{-z}) = -1/2 - sum B_{2k} z^{2k-1} / (2k)!."""
    B = bernoulli_numbers(N + 1)
    cs = [Fraction(-1, 2)] + [Fraction(0)] * N
    for k in range(1, (N + 1) // 2 + 1):
        if 2 * k - 1 <= N:
            cs[2 * k - 1] = -B[2 * k] / factorial(2 * k)
    return Series(N, cs)


def exp_ad_factor(N: int) -> Series:
    """(1 - e^{-z})/z, the series relating phi(e^x) to phi(x)."""
    return Series(N, [Fraction((-1) ** k, factorial(k + 1)) for k in range(N + 1)])


def mult_bracket_series(N: int) -> Series:
    """z^2/(1 - e^{-z}) = z / ((1 - e^{-z})/z)."""
    return Series.z(N) * exp_ad_factor(N).inverse()


def h_even_series(N: int) -> Series:
    """Even part of the Duflo function: -1/2 sum B_{2k} z^{2k} / (2k (2k)!)."""
    B = bernoulli_numbers(N + 1)
    cs = [Fraction(0)] * (N + 1)
    for k in range(1, N // 2 + 1):
        cs[2 * k] = -B[2 * k] / (2 * (2 * k) * factorial(2 * k))
    return Series(N, cs)
