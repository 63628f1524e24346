"""Cyclic words: the trace space |A| = A/[A,A] and its tensor mixes.

A cyclic word is stored by its lexicographically minimal rotation; two
rotations of the same word therefore compare equal.  The degree-0 class
(written one() here) is kept: the lifted cobracket lives on |A|, not on
the quotient by its span.
"""

from __future__ import annotations

from fractions import Fraction

from .ncalg import EMPTY, Context, NCPoly, TensorPoly, Word, word_key


def cyc_canon(w: Word) -> Word:
    """Lexicographically minimal rotation."""
    if len(w) < 2:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class _Sparse:
    """Shared sparse-linear-combination machinery; keys are tuples."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms=None):
        self.ctx = ctx
        t = {}
        if terms:
            for k, c in terms.items():
                k = self._canon(k)
                if c and self._deg(k) <= ctx.N:
                    s = t.get(k, 0) + Fraction(c)
                    if s:
                        t[k] = s
                    else:
                        t.pop(k, None)
        self.terms = t

    @staticmethod
    def _canon(k):
        return k

    @staticmethod
    def _deg(k) -> int:
        raise NotImplementedError

    def __add__(self, other):
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out = type(self)(self.ctx)
        out.terms = t
        return out

    def __neg__(self):
        out = type(self)(self.ctx)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        out = type(self)(self.ctx)
        if c:
            out.terms = {k: c * v for k, v in self.terms.items()}
        return out

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, self.ctx, frozenset(self.terms.items())))


class CyclicPoly(_Sparse):
    """Element of |A|: linear combination of cyclic words."""

    @staticmethod
    def _canon(k):
        return cyc_canon(k)

    @staticmethod
    def _deg(k) -> int:
        return len(k)

    @staticmethod
    def one(ctx: Context, c: Fraction | int = 1) -> "CyclicPoly":
        return CyclicPoly(ctx, {EMPTY: Fraction(c)})

    def coeff(self, w: Word) -> Fraction:
        return self.terms.get(cyc_canon(tuple(w)), Fraction(0))

    def graded(self, d: int) -> "CyclicPoly":
        out = CyclicPoly(self.ctx)
        out.terms = {k: c for k, c in self.terms.items() if len(k) == d}
        return out

    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=-1)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=word_key):
            mono = "".join(f"x{i}" for i in w) or "1"
            bits.append(f"({self.terms[w]})|{mono}|")
        return " + ".join(bits)


class CycTensor(_Sparse):
    """Element of |A| (x) |A|."""

    @staticmethod
    def _canon(k):
        return (cyc_canon(k[0]), cyc_canon(k[1]))

    @staticmethod
    def _deg(k) -> int:
        return len(k[0]) + len(k[1])

    def swap(self) -> "CycTensor":
        out = CycTensor(self.ctx)
        out.terms = {(b, a): c for (a, b), c in self.terms.items()}
        return out

    def alt(self) -> "CycTensor":
        """a (x) b -> a (x) b - b (x) a."""
        return self - self.swap()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for a, b in sorted(self.terms, key=lambda k: (word_key(k[0]), word_key(k[1]))):
            sa = "".join(f"x{i}" for i in a) or "1"
            sb = "".join(f"x{i}" for i in b) or "1"
            bits.append(f"({self.terms[(a, b)]})|{sa}|(x)|{sb}|")
        return " + ".join(bits)


class CycMixLeft(_Sparse):
    """Element of |A| (x) A (cyclic left leg, plain right leg)."""

    @staticmethod
    def _canon(k):
        return (cyc_canon(k[0]), k[1])

    @staticmethod
    def _deg(k) -> int:
        return len(k[0]) + len(k[1])

    def mul_plain(self, b: NCPoly) -> "CycMixLeft":
        """Right action of A on the plain leg: (1 (x) b)."""
        N = self.ctx.N
        t: dict = {}
        for (cw, w), c in self.terms.items():
            for wb, cb in b.terms.items():
                if len(cw) + len(w) + len(wb) > N:
                    continue
                k = (cw, w + wb)
                s = t.get(k, 0) + c * cb
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        out = CycMixLeft(self.ctx)
        out.terms = t
        return out

    def lmul_plain(self, a: NCPoly) -> "CycMixLeft":
        """Left action of A on the plain leg: (1 (x) a) from the left."""
        N = self.ctx.N
        t: dict = {}
        for (cw, w), c in self.terms.items():
            for wa, ca in a.terms.items():
                if len(cw) + len(w) + len(wa) > N:
                    continue
                k = (cw, wa + w)
                s = t.get(k, 0) + c * ca
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        out = CycMixLeft(self.ctx)
        out.terms = t
        return out

    def close_right(self) -> CycTensor:
        """Project the plain leg: (1 (x) | |)."""
        out = CycTensor(self.ctx)
        t: dict = {}
        for (cw, w), c in self.terms.items():
            k = (cw, cyc_canon(w))
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out.terms = t
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for a, b in sorted(self.terms, key=lambda k: (word_key(k[0]), word_key(k[1]))):
            sa = "".join(f"x{i}" for i in a) or "1"
            sb = "".join(f"x{i}" for i in b) or "1"
            bits.append(f"({self.terms[(a, b)]})|{sa}|(x){sb}")
        return " + ".join(bits)


class CycMixRight(_Sparse):
    """Element of A (x) |A| (plain left leg, cyclic right leg)."""

    @staticmethod
    def _canon(k):
        return (k[0], cyc_canon(k[1]))

    @staticmethod
    def _deg(k) -> int:
        return len(k[0]) + len(k[1])

    def mul_plain(self, b: NCPoly) -> "CycMixRight":
        """Right action of A on the plain leg: (b (x) 1)."""
        N = self.ctx.N
        t: dict = {}
        for (w, cw), c in self.terms.items():
            for wb, cb in b.terms.items():
                if len(cw) + len(w) + len(wb) > N:
                    continue
                k = (w + wb, cw)
                s = t.get(k, 0) + c * cb
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        out = CycMixRight(self.ctx)
        out.terms = t
        return out

    def lmul_plain(self, a: NCPoly) -> "CycMixRight":
        N = self.ctx.N
        t: dict = {}
        for (w, cw), c in self.terms.items():
            for wa, ca in a.terms.items():
                if len(cw) + len(w) + len(wa) > N:
                    continue
                k = (wa + w, cw)
                s = t.get(k, 0) + c * ca
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        out = CycMixRight(self.ctx)
        out.terms = t
        return out

    def close_left(self) -> CycTensor:
        """Project the plain leg: (| | (x) 1)."""
        out = CycTensor(self.ctx)
        t: dict = {}
        for (w, cw), c in self.terms.items():
            k = (cyc_canon(w), cw)
            s = t.get(k, 0) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out.terms = t
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for a, b in sorted(self.terms, key=lambda k: (word_key(k[0]), word_key(k[1]))):
            sa = "".join(f"x{i}" for i in a) or "1"
            sb = "".join(f"x{i}" for i in b) or "1"
            bits.append(f"({self.terms[(a, b)]}){sa}(x)|{sb}|")
        return " + ".join(bits)


# -- the structure maps ------------------------------------------------


def project(a: NCPoly) -> CyclicPoly:
    """Natural projection A -> |A|; kills commutators."""
    out = CyclicPoly(a.ctx)
    t: dict = {}
    for w, c in a.terms.items():
        k = cyc_canon(w)
        s = t.get(k, 0) + c
        if s:
            t[k] = s
        else:
            t.pop(k, None)
    out.terms = t
    return out


def needle(c: CyclicPoly) -> NCPoly:
    """Symmetrization |A| -> A: a cyclic word goes to the sum of all its
    rotations; the degree-0 class goes to 0."""
    out = NCPoly(c.ctx)
    t: dict = {}
    for w, coef in c.terms.items():
        for i in range(len(w)):
            r = w[i:] + w[:i]
            s = t.get(r, 0) + coef
            if s:
                t[r] = s
            else:
                t.pop(r, None)
    out.terms = t
    return out


def tilde_delta(a: NCPoly) -> TensorPoly:
    """(1 (x) antipode) after the coproduct; an algebra map A -> A (x) A^op."""
    ctx = a.ctx
    t: dict = {}
    for w, c in a.terms.items():
        m = len(w)
        for mask in range(1 << m):
            left = tuple(w[i] for i in range(m) if mask >> i & 1)
            right = tuple(w[i] for i in range(m) if not mask >> i & 1)
            k = (left, right[::-1])
            v = -c if len(right) % 2 else c
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
    out = TensorPoly(ctx)
    out.terms = t
    return out


def cyc_tensor_of(t: TensorPoly) -> CycTensor:
    """Apply | | (x) | | to a plain tensor."""
    out = CycTensor(t.ctx)
    acc: dict = {}
    for (u, v), c in t.terms.items():
        k = (cyc_canon(u), cyc_canon(v))
        s = acc.get(k, 0) + c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    out.terms = acc
    return out


def mixl_of(t: TensorPoly) -> CycMixLeft:
    """Apply | | (x) 1."""
    out = CycMixLeft(t.ctx)
    acc: dict = {}
    for (u, v), c in t.terms.items():
        k = (cyc_canon(u), v)
        s = acc.get(k, 0) + c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    out.terms = acc
    return out


def mixr_of(t: TensorPoly) -> CycMixRight:
    """Apply 1 (x) | |."""
    out = CycMixRight(t.ctx)
    acc: dict = {}
    for (u, v), c in t.terms.items():
        k = (u, cyc_canon(v))
        s = acc.get(k, 0) + c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    out.terms = acc
    return out


def tilde_delta_cyc(c: CyclicPoly) -> CycTensor:
    """The induced map |A| -> |A| (x) |A| (rotation-independent)."""
    out = CycTensor(c.ctx)
    for w, coef in c.terms.items():
        out = out + cyc_tensor_of(tilde_delta(NCPoly.word(c.ctx, w, coef)))
    return out


def cyc_tensor_one_wedge(c: CyclicPoly) -> CycTensor:
    """c /\\ one = c (x) one - one (x) c."""
    out = CycTensor(c.ctx)
    for w, coef in c.terms.items():
        out.terms[(w, EMPTY)] = out.terms.get((w, EMPTY), Fraction(0)) + coef
        out.terms[(EMPTY, w)] = out.terms.get((EMPTY, w), Fraction(0)) - coef
    out.terms = {k: v for k, v in out.terms.items() if v}
    return out


__all__ = [
    "CyclicPoly",
    "CycTensor",
    "CycMixLeft",
    "CycMixRight",
    "cyc_canon",
    "project",
    "needle",
    "tilde_delta",
    "tilde_delta_cyc",
    "cyc_tensor_of",
    "mixl_of",
    "mixr_of",
    "cyc_tensor_one_wedge",
]
