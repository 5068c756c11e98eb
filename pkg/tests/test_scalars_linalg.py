from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semicross.linalg import Subspace, span
from semicross.scalars import GaussRat, fn, format_scalar, parse_scalar

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
gauss = st.builds(GaussRat, fractions, fractions)


@pytest.mark.parametrize(
    "text, re, im",
    [("3", 3, 0), ("1/2", Fraction(1, 2), 0), ("1/2+3/4*i", Fraction(1, 2), Fraction(3, 4)),
     ("-i", 0, -1), ("i", 0, 1), ("2-i", 2, -1), ("-5/3*i", 0, Fraction(-5, 3))],
)
def test_parse_scalar(text, re, im):
    assert parse_scalar(text) == GaussRat(re, im)


def test_floats_rejected():
    with pytest.raises(TypeError):
        parse_scalar(0.5)
    with pytest.raises(TypeError):
        GaussRat(1) * 0.5


@given(gauss)
def test_format_roundtrip(z):
    assert parse_scalar(format_scalar(z)) == z


@given(gauss, gauss, gauss)
def test_field_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()) == a.abs2()
    if b:
        assert (a / b) * b == a


def test_equality_with_plain_numbers():
    assert GaussRat(1) == 1
    assert GaussRat(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(GaussRat(2)) == hash(2)
    assert not GaussRat(0)


def test_nullspace_and_membership():
    s = Subspace.nullspace([[1, 1, 0], [0, 1, 1]], 3)
    assert s.dimension == 1
    assert s.contains([1, -1, 1])
    assert s.contains(fn(["i", "-i", "i"]))
    assert not s.contains([1, 1, 1])


def test_rref_equality_is_basis_independent():
    a = span([[1, 2, 0], [0, 1, 1]], 3)
    b = span([[1, 3, 1], [2, 5, 1]], 3)
    assert a == b


def test_intersection_and_sum():
    x = span([[1, 0, 0], [0, 1, 0]], 3)
    y = span([[0, 1, 0], [0, 0, 1]], 3)
    assert x.intersection(y) == span([[0, 1, 0]], 3)
    assert x.sum(y) == Subspace.full(3)
    assert Subspace.zero(3).is_subspace_of(x)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=5))
def test_nullspace_vectors_solve_system(rows):
    s = Subspace.nullspace(rows, 4)
    for v in s.basis:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) == 0
    assert s.dimension + Subspace(4, rows).dimension == 4
