from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homassoc.linalg import (Matrix, SubspaceBasis, format_rational, in_span, kernel_basis, rank,
                             solve, to_rational)

small = st.integers(-3, 3)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rational_parsing_and_formatting():
    assert to_rational("6/4") == Fraction(3, 2)
    assert to_rational("4/2") == 2 and isinstance(to_rational("4/2"), int)
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"
    with pytest.raises((ValueError, TypeError)):
        to_rational(0.5)


def test_fraction_arithmetic_is_canonical():
    x = Fraction(1, 6) + Fraction(1, 3)
    assert (x.numerator, x.denominator) == (1, 2)


def test_rank_examples():
    assert rank(Matrix.identity(2)) == 2
    assert rank(Matrix.zeros(3, 4)) == 0
    assert rank([[1, 2], [2, 4]]) == 1


def test_kernel_examples():
    assert len(kernel_basis(Matrix.identity(3))) == 0
    assert len(kernel_basis(Matrix.zeros(2, 3))) == 3
    (v,) = kernel_basis([[1, 1]]).vectors
    assert v[0] == -v[1] != 0


def test_in_span_examples():
    b = SubspaceBasis(2, [[0, 1]])
    assert in_span([0, 0], b)
    assert in_span([0, 1], b)
    assert not in_span([1, 0], b)
    with pytest.raises(ValueError):
        in_span([1, 0, 0], b)


def test_solve_examples():
    assert solve(Matrix.identity(2), [3, Fraction(1, 2)]) == [3, Fraction(1, 2)]
    assert solve(Matrix.zeros(2, 2), [1, 0]) is None
    assert solve([[2]], [1]) == [Fraction(1, 2)]


def test_subspace_basis_rejects_dependent_vectors():
    with pytest.raises(ValueError):
        SubspaceBasis(2, [[1, 2], [2, 4]])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity_and_transpose(rows):
    m = Matrix.from_rows(rows)
    r = rank(m)
    assert r == rank(m.transpose())
    ker = kernel_basis(m)
    assert r + len(ker) == m.cols
    for v in ker.vectors:
        assert all(x == 0 for x in m.matvec(v))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_returns_exact_solutions(rows, data):
    m = Matrix.from_rows(rows)
    x = data.draw(st.lists(small, min_size=m.cols, max_size=m.cols))
    rhs = m.matvec(x)
    y = solve(m, rhs)
    assert y is not None and m.matvec(y) == rhs


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_coordinates_reconstruct_span_members(rows, data):
    ker = kernel_basis(Matrix.from_rows(rows))
    coords = data.draw(st.lists(small, min_size=len(ker), max_size=len(ker)))
    v = ker.combine(coords)
    assert ker.contains(v)
    assert ker.coordinates(v) == coords
