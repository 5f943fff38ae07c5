from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from derham_lc.algebra import (
    NEG_INF,
    Polynomial,
    VariableContext,
    dehomogenize_poly,
    differentiate,
    exact_divide,
    homogenize_poly,
    invert_matrix,
    linear_change,
)

from conftest import XY, XYZ, nonzero_polynomials, polynomials


def test_differentiate_examples(xy):
    x, y = xy
    assert differentiate(x**2 * y, 0) == 2 * x * y
    f = x * y + 1
    assert differentiate(f, 1) == x
    assert differentiate(f, 0) == y


def test_differentiate_index_out_of_range(xy):
    with pytest.raises(IndexError):
        differentiate(xy[0], 2)


def test_exact_divide_examples(xy):
    x, y = xy
    assert exact_divide(x**2 - 1, x - 1) == x + 1
    assert exact_divide(x * y + 1, x) is None
    assert exact_divide(x**2 * y + x, x) == x * y + 1
    with pytest.raises(ZeroDivisionError):
        exact_divide(x, XY.zero())


def test_zero_degree_sentinel():
    assert XY.zero().degree() == NEG_INF
    assert XY.one().degree() == 0


def test_rational_coefficients_are_reduced(xy):
    x, _ = xy
    p = x * Fraction(6, 4)
    c = p.coefficient((1, 0))
    assert c == Fraction(3, 2) and c.denominator == 2
    assert (x * Fraction(4, 2)).coefficient((1, 0)) == 2


def test_canonical_text(xy):
    x, y = xy
    assert str(x * y + 1) == "x*y + 1"
    assert str(Fraction(3, 2) * x**2 * y) == "3/2*x^2*y"
    assert str(-x + y) == "-x + y"
    assert str(XY.zero()) == "0"


def test_linear_change_examples(xy):
    x, y = xy
    ident = [[1, 0], [0, 1]]
    assert linear_change(x, ident) == x
    swap = [[0, 1], [1, 0]]
    assert linear_change(x * y + 1, swap) == x * y + 1
    shear = [[1, 1], [0, 1]]
    # substitute-and-expand oracle: x -> x + y, y -> y
    assert linear_change(x + y, shear) == (x + y).substitute([x + y, y])
    assert linear_change(x + y, shear) == x + 2 * y


def test_linear_change_singular(xy):
    with pytest.raises(ValueError):
        linear_change(xy[0], [[1, 1], [1, 1]])


def test_homogenize_examples(xy):
    x, y = xy
    h = homogenize_poly(x * y + 1, "z")
    x3, y3, z3 = h.ctx.gens()
    assert h.ctx.names == ("x", "y", "z")
    assert h == x3 * y3 + z3**2
    assert homogenize_poly(y + x**3, "z") == y3 * z3**2 + x3**3
    assert dehomogenize_poly(x3 * y3 + z3**2, "z") == x * y + 1


def test_homogenize_name_clash(xy):
    with pytest.raises(ValueError):
        homogenize_poly(xy[0], "x")


@given(polynomials(XYZ), st.integers(0, 2), st.integers(0, 2))
def test_partials_commute(p, i, j):
    assert differentiate(differentiate(p, i), j) == differentiate(differentiate(p, j), i)


@given(polynomials(XY), polynomials(XY), st.integers(0, 1))
def test_leibniz(p, q, i):
    assert differentiate(p * q, i) == differentiate(p, i) * q + p * differentiate(q, i)


@given(polynomials(XY), nonzero_polynomials(XY))
def test_exact_divide_product(p, q):
    assert exact_divide(p * q, q) == p


@given(polynomials(XY))
def test_dehomogenize_homogenize(p):
    assert dehomogenize_poly(homogenize_poly(p, "w"), "w") == p


@given(polynomials(XY), polynomials(XY))
def test_homogenize_is_multiplicative(p, q):
    assert homogenize_poly(p * q, "w") == homogenize_poly(p, "w") * homogenize_poly(q, "w")


invertible_2x2 = st.tuples(*[st.integers(-3, 3)] * 4).filter(
    lambda t: t[0] * t[3] - t[1] * t[2] != 0).map(lambda t: [[t[0], t[1]], [t[2], t[3]]])


@given(polynomials(XY), invertible_2x2)
def test_linear_change_roundtrip(p, A):
    assert linear_change(linear_change(p, A), invert_matrix(A)) == p


@given(polynomials(XY), polynomials(XY), invertible_2x2)
def test_linear_change_is_ring_map(p, q, A):
    assert linear_change(p * q, A) == linear_change(p, A) * linear_change(q, A)


@given(polynomials(XY), st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_evaluate_matches_substitution(p, pt):
    images = [XY.constant(c) for c in pt]
    assert p.substitute(images).constant_value() == p.evaluate(pt)
