from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from asgder.errors import DivisionByZero, MalformedElement
from asgder.linalg import div, format_fraction, nullspace, rank, rref, sign, solve, to_fraction

F = Fraction


def test_fraction_arithmetic():
    assert F(1, 2) + F(1, 3) == F(5, 6)
    assert -(-F(1)) == 1
    assert F(3, 4) * (1 / F(3, 4)) == 1


def test_to_fraction_parses_strings():
    assert to_fraction("3/4") == F(3, 4)
    assert to_fraction(" -2 ") == -2
    assert to_fraction(5) == 5


def test_to_fraction_errors():
    with pytest.raises(DivisionByZero):
        to_fraction("1/0")
    with pytest.raises(MalformedElement):
        to_fraction("abc")
    with pytest.raises(MalformedElement):
        to_fraction(True)
    with pytest.raises(MalformedElement):
        to_fraction(0.5)
    with pytest.raises(DivisionByZero):
        div(1, 0)


def test_format_fraction():
    assert format_fraction(F(4, 2)) == "2"
    assert format_fraction(F(-1, 3)) == "-1/3"


def test_sign():
    assert [sign(k) for k in range(-2, 3)] == [1, -1, 1, -1, 1]


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[1, 2], [2, 4], [0, 1]]) == 2
    assert rank([]) == 0


def test_rref_and_nullspace():
    red = rref([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert [c for c, _ in red] == [0, 1]
    null = nullspace([[1, 2, 3], [0, 1, 1]], 3)
    assert len(null) == 1
    v = null[0]
    assert v[0] + 2 * v[1] + 3 * v[2] == 0 and v[1] + v[2] == 0


def test_solve():
    x = solve([[1, 1], [1, -1]], [3, 1], 2)
    assert x == [2, 1]
    assert solve([[1, 1], [1, 1]], [1, 2], 2) is None


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=5))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity(rows):
    n = len(rows[0])
    assert rank(rows) + len(nullspace(rows, n)) == n
    for v in nullspace(rows, n):
        assert all(sum(F(a) * b for a, b in zip(r, v)) == 0 for r in rows)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_of_transpose(rows):
    cols = [list(c) for c in zip(*rows)]
    assert rank(rows) == rank(cols)


@settings(max_examples=40, deadline=None)
@given(matrices, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_returns_solution_of_consistent_system(rows, xs):
    n = len(rows[0])
    x0 = xs[:n]
    rhs = [sum(a * b for a, b in zip(r, x0)) for r in rows]
    x = solve(rows, rhs, n)
    assert x is not None
    assert [sum(F(a) * b for a, b in zip(r, x)) for r in rows] == rhs
