"""Exact linear algebra over the rationals.

Matrices are lists of rows, entries are Fractions (ints are accepted and
coerced).  Everything here is dense; the systems arising from the
degree-by-degree solvers are small (a few hundred unknowns at most), so
plain fraction-free-less Gaussian elimination is fast enough and keeps the
code obvious.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def _copy(m: Matrix) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    a = _copy(m)
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def solve(a: Matrix, b: list[Fraction]) -> list[Fraction] | None:
    """One solution of a x = b, or None if inconsistent.

    Free variables are set to zero, so the solution is deterministic in the
    given column order.
    """
    if not a:
        return [] if all(x == 0 for x in b) else None
    rows, cols = len(a), len(a[0])
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    for c in pivots:
        if c == cols:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = r[i][cols]
    return x


def nullspace(a: Matrix) -> list[list[Fraction]]:
    """Basis of the right kernel of a, one vector per free column."""
    if not a:
        return []
    cols = len(a[0])
    r, pivots = rref(a)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -r[i][free]
        basis.append(v)
    return basis


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def in_span(vectors: list[list[Fraction]], target: list[Fraction]) -> list[Fraction] | None:
    """Coefficients expressing target in the span of vectors, or None."""
    if not vectors:
        return [] if all(x == 0 for x in target) else None
    cols = len(vectors)
    rows = len(vectors[0])
    a = [[vectors[j][i] for j in range(cols)] for i in range(rows)]
    return solve(a, list(target))
