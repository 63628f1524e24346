from fractions import Fraction

from gtkv.linalg import in_span, nullspace, rank, rref, solve

F = Fraction


def test_rref_pivots():
    m = [[F(2), F(4)], [F(1), F(2)]]
    r, pivots = rref(m)
    assert pivots == [0]
    assert r[0] == [F(1), F(2)]


def test_solve_unique():
    a = [[F(1), F(1)], [F(0), F(1)]]
    assert solve(a, [F(3), F(1)]) == [F(2), F(1)]


def test_solve_underdetermined_sets_free_to_zero():
    a = [[F(1), F(1), F(0)]]
    assert solve(a, [F(5)]) == [F(5), F(0), F(0)]


def test_solve_inconsistent():
    a = [[F(1), F(0)], [F(1), F(0)]]
    assert solve(a, [F(1), F(2)]) is None


def test_nullspace():
    a = [[F(1), F(1), F(1)]]
    basis = nullspace(a)
    assert len(basis) == 2
    for v in basis:
        assert sum(v) == 0


def test_rank_and_span():
    vs = [[F(1), F(0)], [F(1), F(1)]]
    assert rank(vs) == 2
    assert in_span(vs, [F(3), F(2)]) is not None
    assert in_span([[F(1), F(0)]], [F(0), F(1)]) is None
