"""Exact genus-zero surface operations on the group ring of a free group.

The fundamental group of a genus-zero surface with n+1 boundary
components is free on loops g_1..g_n around the first n boundary
components; the last boundary class is (g_1 .. g_n)^{-1}.  Letters are
encoded as signed integers: i for g_i, -i for g_i^{-1}; words are tuples
of letters, always reduced.

All operations are characterized algebraically:

* kappa is the double bracket fixed by its values on generator pairs
  and by the Leibniz rules in both slots (inverse letters are resolved
  through kappa(a, 1) = kappa(1, a) = 0);
* mu (based self-intersection) satisfies the product formula
  mu(xy) = mu(x)(1 (x) y) + (1 (x) x) mu(y) + (| | (x) 1) kappa(x, y)
  and mu(g_i) = 0; these pin it down;
* mu_star is the opposite-side variant, with mu_star(g_i^{-1}) = 0;
* delta_plus (the framed lift of the cobracket) is
  -(1 (x) | |) mu - (| | (x) 1) mu_star.

The bracket { , } on conjugacy classes induced by kappa is minus the
Goldman bracket; both signs are exposed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

FWord = tuple[int, ...]  # reduced word in signed letters


def w_reduce(letters) -> FWord:
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("letter 0 is not allowed")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def w_mul(a: FWord, b: FWord) -> FWord:
    return w_reduce(a + b)


def w_inv(a: FWord) -> FWord:
    return tuple(-x for x in reversed(a))


def cyc_reduce(w: FWord) -> FWord:
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def loop_canon(w: FWord) -> FWord:
    """Cyclically reduced, lexicographically minimal rotation."""
    w = cyc_reduce(w_reduce(w))
    if len(w) < 2:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def parse_word(text: str, n: int) -> FWord:
    """Parse 'g1 g2^-1 g1' into a reduced word."""
    letters = []
    for tok in text.split():
        neg = False
        if tok.endswith("^-1"):
            neg = True
            tok = tok[: -len("^-1")]
        if not tok.startswith("g"):
            raise ValueError(f"bad generator token {tok!r}")
        i = int(tok[1:])
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        letters.append(-i if neg else i)
    return w_reduce(letters)


def format_word(w: FWord) -> str:
    return " ".join(f"g{a}" if a > 0 else f"g{-a}^-1" for a in w) if w else "1"


class _GSparse:
    """Sparse rational combinations keyed by tuples (shared plumbing)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        t = {}
        if terms:
            for k, c in terms.items():
                k = self._canon(k)
                if c:
                    s = t.get(k, 0) + Fraction(c)
                    if s:
                        t[k] = s
                    else:
                        t.pop(k, None)
        self.terms = t

    @staticmethod
    def _canon(k):
        return k

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("generator count mismatch")
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out = type(self)(self.n)
        out.terms = t
        return out

    def __neg__(self):
        out = type(self)(self.n)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        out = type(self)(self.n)
        if c:
            out.terms = {k: c * v for k, v in self.terms.items()}
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, self.n, frozenset(self.terms.items())))


class GroupRingElt(_GSparse):
    """Finite rational combination of reduced free-group words."""

    @staticmethod
    def _canon(k):
        return w_reduce(k)

    @staticmethod
    def one(n: int) -> "GroupRingElt":
        return GroupRingElt(n, {(): Fraction(1)})

    @staticmethod
    def gen(n: int, i: int, power: int = 1) -> "GroupRingElt":
        sign = 1 if power >= 0 else -1
        return GroupRingElt(n, {(sign * i,) * abs(power): Fraction(1)})

    @staticmethod
    def word(n: int, w, c: Fraction | int = 1) -> "GroupRingElt":
        return GroupRingElt(n, {w_reduce(tuple(w)): Fraction(c)})

    def __mul__(self, other):
        if isinstance(other, GroupRingElt):
            t: dict = {}
            for wa, ca in self.terms.items():
                for wb, cb in other.terms.items():
                    k = w_mul(wa, wb)
                    s = t.get(k, 0) + ca * cb
                    if s:
                        t[k] = s
                    else:
                        t.pop(k, None)
            out = GroupRingElt(self.n)
            out.terms = t
            return out
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def antipode(self) -> "GroupRingElt":
        out = GroupRingElt(self.n)
        out.terms = {w_inv(w): c for w, c in self.terms.items()}
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})[{format_word(w)}]" for w, c in sorted(self.terms.items())
        )


class LoopElt(_GSparse):
    """Rational combination of conjugacy classes (free loops)."""

    @staticmethod
    def _canon(k):
        return loop_canon(k)

    @staticmethod
    def one(n: int) -> "LoopElt":
        return LoopElt(n, {(): Fraction(1)})

    @staticmethod
    def of_word(n: int, w, c: Fraction | int = 1) -> "LoopElt":
        return LoopElt(n, {loop_canon(tuple(w)): Fraction(c)})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})|{format_word(w)}|" for w, c in sorted(self.terms.items())
        )


class GRTensor(_GSparse):
    """Element of Kpi (x) Kpi."""

    @staticmethod
    def _canon(k):
        return (w_reduce(k[0]), w_reduce(k[1]))

    def swap(self) -> "GRTensor":
        out = GRTensor(self.n)
        out.terms = {(b, a): c for (a, b), c in self.terms.items()}
        return out

    def antipode_both(self) -> "GRTensor":
        out = GRTensor(self.n)
        out.terms = {(w_inv(a), w_inv(b)): c for (a, b), c in self.terms.items()}
        return out

    def legs_mul(self) -> GroupRingElt:
        """a (x) b -> ab."""
        t: dict = {}
        for (a, b), c in self.terms.items():
            k = w_mul(a, b)
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out = GroupRingElt(self.n)
        out.terms = t
        return out

    def legs_mul_swapped(self) -> GroupRingElt:
        """a (x) b -> ba."""
        return self.swap().legs_mul()

    def close_both(self) -> "LoopTensor":
        out = LoopTensor(self.n)
        t: dict = {}
        for (a, b), c in self.terms.items():
            k = (loop_canon(a), loop_canon(b))
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out.terms = t
        return out


class LoopTensor(_GSparse):
    """Element of |Kpi| (x) |Kpi|."""

    @staticmethod
    def _canon(k):
        return (loop_canon(k[0]), loop_canon(k[1]))

    def swap(self) -> "LoopTensor":
        out = LoopTensor(self.n)
        out.terms = {(b, a): c for (a, b), c in self.terms.items()}
        return out

    def alt(self) -> "LoopTensor":
        return self - self.swap()


class MixLG(_GSparse):
    """Element of |Kpi| (x) Kpi (loop left leg, group-ring right leg)."""

    @staticmethod
    def _canon(k):
        return (loop_canon(k[0]), w_reduce(k[1]))

    def mul_plain(self, y: FWord) -> "MixLG":
        out = MixLG(self.n)
        t: dict = {}
        for (l, w), c in self.terms.items():
            k = (l, w_mul(w, y))
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out.terms = t
        return out

    def lmul_plain(self, y: FWord) -> "MixLG":
        out = MixLG(self.n)
        t: dict = {}
        for (l, w), c in self.terms.items():
            k = (l, w_mul(y, w))
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out.terms = t
        return out

    def close_right(self) -> LoopTensor:
        out = LoopTensor(self.n)
        t: dict = {}
        for (l, w), c in self.terms.items():
            k = (l, loop_canon(w))
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out.terms = t
        return out

    def swap_legs(self) -> "MixGL":
        out = MixGL(self.n)
        out.terms = {(w, l): c for (l, w), c in self.terms.items()}
        return out


class MixGL(_GSparse):
    """Element of Kpi (x) |Kpi|."""

    @staticmethod
    def _canon(k):
        return (w_reduce(k[0]), loop_canon(k[1]))

    def mul_plain(self, y: FWord) -> "MixGL":
        out = MixGL(self.n)
        t: dict = {}
        for (w, l), c in self.terms.items():
            k = (w_mul(w, y), l)
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out.terms = t
        return out

    def lmul_plain(self, y: FWord) -> "MixGL":
        out = MixGL(self.n)
        t: dict = {}
        for (w, l), c in self.terms.items():
            k = (w_mul(y, w), l)
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out.terms = t
        return out

    def close_left(self) -> LoopTensor:
        out = LoopTensor(self.n)
        t: dict = {}
        for (w, l), c in self.terms.items():
            k = (loop_canon(w), l)
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out.terms = t
        return out


# -- kappa --------------------------------------------------------------


@lru_cache(maxsize=None)
def _kappa_letters(n: int, a: int, b: int) -> GRTensor:
    """kappa on a pair of signed letters."""
    i, j = abs(a), abs(b)
    if a > 0 and b > 0:
        if i < j:
            return GRTensor(n)
        if i == j:
            # 1 (x) g_i^2 - g_i (x) g_i
            return GRTensor(n, {((), (i, i)): 1, ((i,), (i,)): -1})
        return GRTensor(
            n,
            {
                ((), (i, j)): 1,
                ((j, i), ()): 1,
                ((i,), (j,)): -1,
                ((j,), (i,)): -1,
            },
        )
    if a < 0:
        # kappa(u^{-1}, b) = - u^{-1} * kappa(u, b) * u^{-1}  (inner sandwich)
        base = _kappa_letters(n, i, b)
        out: dict = {}
        for (p, q), c in base.terms.items():
            out_key = (w_mul(p, (-i,)), w_mul((-i,), q))
            out[out_key] = out.get(out_key, 0) - c
        return GRTensor(n, out)
    # b < 0: kappa(a, v^{-1}) = - v^{-1} kappa(a, v) v^{-1}  (outer sandwich)
    base = _kappa_letters(n, a, j)
    out = {}
    for (p, q), c in base.terms.items():
        out_key = (w_mul((-j,), p), w_mul(q, (-j,)))
        out[out_key] = out.get(out_key, 0) - c
    return GRTensor(n, out)


def kappa_words(n: int, z: FWord, w: FWord) -> GRTensor:
    """kappa on a pair of group elements, by the double Leibniz expansion."""
    t: dict = {}
    for j, za in enumerate(z):
        for k, wb in enumerate(w):
            base = _kappa_letters(n, za, wb)
            if base.is_zero():
                continue
            l1, r1 = w[:k], z[j + 1 :]
            l2, r2 = z[:j], w[k + 1 :]
            for (p, q), c in base.terms.items():
                key = (w_reduce(l1 + p + r1), w_reduce(l2 + q + r2))
                s = t.get(key, 0) + c
                if s:
                    t[key] = s
                else:
                    t.pop(key, None)
    out = GRTensor(n)
    out.terms = t
    return out


def kappa_grp(x: GroupRingElt, y: GroupRingElt) -> GRTensor:
    out = GRTensor(x.n)
    for wx, cx in x.terms.items():
        for wy, cy in y.terms.items():
            out = out + kappa_words(x.n, wx, wy).scale(cx * cy)
    return out


# -- brackets on loops ----------------------------------------------------


def goldman_minus(c1: LoopElt, c2: LoopElt) -> LoopElt:
    """The bracket induced by kappa on conjugacy classes.

    This is minus the classical Goldman bracket; see ``goldman``.
    """
    n = c1.n
    out = LoopElt(n)
    for w1, a1 in c1.terms.items():
        for w2, a2 in c2.terms.items():
            k = kappa_words(n, w1, w2)
            t: dict = {}
            for (p, q), c in k.terms.items():
                key = loop_canon(w_mul(p, q))
                s = t.get(key, 0) + c
                if s:
                    t[key] = s
                else:
                    t.pop(key, None)
            piece = LoopElt(n)
            piece.terms = t
            out = out + piece.scale(a1 * a2)
    return out


def goldman(c1: LoopElt, c2: LoopElt) -> LoopElt:
    """The classical Goldman bracket (minus the kappa-induced one)."""
    return -goldman_minus(c1, c2)


def bracket_mixed_lg(c: LoopElt, y: GroupRingElt) -> GroupRingElt:
    """{|x|, y}: multiply the kappa legs in order."""
    n = c.n
    out = GroupRingElt(n)
    for wl, cl in c.terms.items():
        for wy, cy in y.terms.items():
            out = out + kappa_words(n, wl, wy).legs_mul().scale(cl * cy)
    return out


def bracket_mixed_gl(x: GroupRingElt, c: LoopElt) -> GroupRingElt:
    """{x, |y|}: multiply the kappa legs in reversed order."""
    n = x.n
    out = GroupRingElt(n)
    for wx, cx in x.terms.items():
        for wl, cl in c.terms.items():
            out = out + kappa_words(n, wx, wl).legs_mul_swapped().scale(cx * cl)
    return out


# -- the self-intersection maps ------------------------------------------


def _mix_of_kappa_left(n: int, t: GRTensor) -> MixLG:
    out = MixLG(n)
    acc: dict = {}
    for (p, q), c in t.terms.items():
        k = (loop_canon(p), q)
        s = acc.get(k, 0) + c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    out.terms = acc
    return out


def _mix_of_kappa_right(n: int, t: GRTensor) -> MixGL:
    out = MixGL(n)
    acc: dict = {}
    for (p, q), c in t.terms.items():
        k = (p, loop_canon(q))
        s = acc.get(k, 0) + c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    out.terms = acc
    return out


class GrpOps:
    """Memoized recursive evaluation of mu, mu_star and delta_plus."""

    def __init__(self, n: int):
        self.n = n
        self._mu: dict[FWord, MixLG] = {(): MixLG(n)}
        self._mu_star: dict[FWord, MixGL] = {(): MixGL(n)}

    # mu(xy) = mu(x)(1 (x) y) + (1 (x) x) mu(y) + (| | (x) 1) kappa(x, y)
    def mu_word(self, w: FWord) -> MixLG:
        w = w_reduce(w)
        if w in self._mu:
            return self._mu[w]
        if len(w) == 1:
            a = w[0]
            if a > 0:
                out = MixLG(self.n)  # mu(g_i) = 0
            else:
                # 0 = mu(g_i g_i^{-1}) forces
                # mu(g_i^{-1}) = -(1 (x) g_i^{-1}) (| | (x) 1) kappa(g_i, g_i^{-1})
                k = kappa_words(self.n, (-a,), (a,))
                out = _mix_of_kappa_left(self.n, k).lmul_plain((a,))
                out = out.scale(-1)
        else:
            head, tail = w[:1], w[1:]
            out = (
                self.mu_word(head).mul_plain(tail)
                + self.mu_word(tail).lmul_plain(head)
                + _mix_of_kappa_left(self.n, kappa_words(self.n, head, tail))
            )
        self._mu[w] = out
        return out

    # mu_star(xy) = mu_star(x)(y (x) 1) + (x (x) 1) mu_star(y) + (1 (x) | |) kappa(y, x)
    def mu_star_word(self, w: FWord) -> MixGL:
        w = w_reduce(w)
        if w in self._mu_star:
            return self._mu_star[w]
        if len(w) == 1:
            a = w[0]
            if a < 0:
                out = MixGL(self.n)  # mu_star(g_i^{-1}) = 0
            else:
                # 0 = mu_star(g_i^{-1} g_i) forces
                # mu_star(g_i) = -(g_i (x) 1)(1 (x) | |) kappa(g_i, g_i^{-1})
                k = kappa_words(self.n, (a,), (-a,))
                out = _mix_of_kappa_right(self.n, k).lmul_plain((a,))
                out = out.scale(-1)
        else:
            head, tail = w[:1], w[1:]
            out = (
                self.mu_star_word(head).mul_plain(tail)
                + self.mu_star_word(tail).lmul_plain(head)
                + _mix_of_kappa_right(self.n, kappa_words(self.n, tail, head))
            )
        self._mu_star[w] = out
        return out

    def mu(self, x: GroupRingElt) -> MixLG:
        out = MixLG(self.n)
        for w, c in x.terms.items():
            out = out + self.mu_word(w).scale(c)
        return out

    def mu_star(self, x: GroupRingElt) -> MixGL:
        out = MixGL(self.n)
        for w, c in x.terms.items():
            out = out + self.mu_star_word(w).scale(c)
        return out

    def delta_plus_word(self, w: FWord) -> LoopTensor:
        """-(1 (x) | |) mu(w) - (| | (x) 1) mu_star(w)."""
        return -(self.mu_word(w).close_right()) - self.mu_star_word(w).close_left()

    def delta_plus(self, c: LoopElt) -> LoopTensor:
        out = LoopTensor(self.n)
        for w, coef in c.terms.items():
            out = out + self.delta_plus_word(w).scale(coef)
        return out

    def delta_plus_word_alt(self, w: FWord) -> LoopTensor:
        """-Alt (1 (x) | |) mu(w) + |w| /\\ one; equality with delta_plus_word
        is a tested identity."""
        base = self.mu_word(w).close_right().alt().scale(-1)
        lw = loop_canon(w)
        wedge = LoopTensor(self.n, {(lw, ()): 1}) + LoopTensor(self.n, {((), lw): -1})
        return base + wedge

    def involution_defect(self, w: FWord) -> GroupRingElt:
        """The composite bracket-after-mu, which vanishes identically."""
        out = GroupRingElt(self.n)
        for (l, y), c in self.mu_word(w).terms.items():
            out = out + bracket_mixed_lg(
                LoopElt.of_word(self.n, l), GroupRingElt.word(self.n, y)
            ).scale(c)
        return out
