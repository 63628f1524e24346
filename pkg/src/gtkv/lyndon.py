"""Lyndon-word services for the free Lie algebra.

The degree-d part L_d of the free Lie algebra on x_1..x_n has a basis
indexed by Lyndon words of length d; the basis element of a word is its
standard bracketing.  This is the coordinate system used by all the
degree-by-degree linear solves.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix, solve
from .ncalg import Context, NCPoly, Word, commutator


def lyndon_words(n: int, d: int) -> list[Word]:
    """All Lyndon words of length exactly d over 1..n, lexicographically.

    Duval's generation algorithm.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    out: list[Word] = []
    w = [1]
    while w:
        if len(w) == d:
            out.append(tuple(w))
        # extend periodically to length d, then increment
        ext = [w[i % len(w)] for i in range(d)]
        w = ext
        while w and w[-1] == n:
            w.pop()
        if w:
            w[-1] += 1
        else:
            break
    return sorted(out)


def is_lyndon(w: Word) -> bool:
    return len(w) > 0 and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def standard_bracketing(ctx: Context, w: Word) -> NCPoly:
    """The Lie element of a Lyndon word via its standard factorization."""
    if len(w) == 1:
        return NCPoly.gen(ctx, w[0])
    # longest proper Lyndon suffix
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return commutator(standard_bracketing(ctx, w[:i]), standard_bracketing(ctx, w[i:]))
    raise AssertionError("not a Lyndon word")


def lyndon_basis(ctx: Context, d: int) -> list[NCPoly]:
    """Basis of L_d as NCPoly values, in lexicographic Lyndon order."""
    if not 1 <= d <= ctx.N:
        raise ValueError("degree out of range")
    return [standard_bracketing(ctx, w) for w in lyndon_words(ctx.n, d)]


def witt_dimension(n: int, d: int) -> int:
    """dim L_d = (1/d) sum_{e | d} mu(e) n^{d/e}."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _mobius(e) * n ** (d // e)
    assert total % d == 0
    return total // d


def _mobius(m: int) -> int:
    if m == 1:
        return 1
    result, p, left = 1, 2, m
    while p * p <= left:
        if left % p == 0:
            left //= p
            if left % p == 0:
                return 0
            result = -result
        p += 1
    if left > 1:
        result = -result
    return result


def word_coords(a: NCPoly, words: list[Word]) -> list[Fraction]:
    """Coefficient vector of a on the given word list."""
    return [a.terms.get(w, Fraction(0)) for w in words]


def lie_coords(a: NCPoly, ctx: Context, d: int) -> list[Fraction] | None:
    """Coordinates of a homogeneous Lie element in the Lyndon basis of L_d."""
    words = ctx.words(d)
    basis = lyndon_basis(ctx, d)
    cols: Matrix = [[b.terms.get(w, Fraction(0)) for b in basis] for w in words]
    return solve(cols, word_coords(a, words))
