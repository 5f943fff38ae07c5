import pytest
from hypothesis import given, strategies as st

from derham_lc.algebra import Polynomial, VariableContext, linear_change
from derham_lc.groebner import Ideal
from derham_lc.locmod import LocalizedModuleSpec, SpecError
from derham_lc.theorems import (
    PRIMALITY_NOTE,
    SurfaceInvariants,
    coordinates_with_last,
    graph_coordinates,
    laurent_extension,
    predict_chi,
    verify_graded_chi,
    verify_laurent_chi,
    verify_thm26,
    verify_thm34a,
)

from conftest import XY, XYZ, polynomials

x, y = XY.gens()


# closed forms


def test_predict_one_parameter_formulas():
    assert predict_chi("4.3", SurfaceInvariants(s=2)) == 3
    assert predict_chi("4.7", SurfaceInvariants(s=3)) == 2
    assert predict_chi("4.8", SurfaceInvariants(s=0)) == -1


@pytest.mark.parametrize("s", range(0, 101))
def test_alternating_formula_matches_r2_case(s):
    assert predict_chi("5.2", SurfaceInvariants(r=2, s=s)) == predict_chi("4.7", SurfaceInvariants(s=s))


def _alternating_oracle(n, r, sj):
    # direct transcription: (-1)^r * (-1 + sum over j of (-1)^(n-j) s_j)
    total = 0
    for j in range(n - r, n + 1):
        sign = 1 if (n - j) % 2 == 0 else -1
        total += sign * sj.get(j, 0)
    return (1 if r % 2 == 0 else -1) * (total - 1)


def test_predict_explicit_multiplicities():
    inv = SurfaceInvariants(n=4, r=2, s_j={2: 3, 3: 1, 4: 0})
    assert predict_chi("5.2", inv) == 1


@given(st.integers(2, 6).flatmap(lambda r: st.tuples(
    st.just(r), st.integers(r, r + 3),
    st.lists(st.integers(0, 20), min_size=r + 1, max_size=r + 1))))
def test_predict_alternating_sum_property(args):
    r, n, values = args
    sj = {n - r + i: v for i, v in enumerate(values)}
    assert predict_chi("5.2", SurfaceInvariants(n=n, r=r, s_j=sj)) == _alternating_oracle(n, r, sj)


@given(st.integers(2, 7), st.integers(0, 50))
def test_lowest_multiplicity_shorthand(r, s):
    n = r + 2
    assert predict_chi("5.2", SurfaceInvariants(r=r, s=s)) == \
        predict_chi("5.2", SurfaceInvariants(n=n, r=r, s_j={n - r: s}))


def test_predict_rejects_bad_inputs():
    with pytest.raises(ValueError):
        predict_chi("9.9", SurfaceInvariants(s=1))
    with pytest.raises(ValueError):
        predict_chi("4.7", SurfaceInvariants())
    with pytest.raises(ValueError):
        predict_chi("5.2", SurfaceInvariants(r=1, s=1))
    with pytest.raises(ValueError):
        predict_chi("5.2", SurfaceInvariants(r=2, n=4, s_j={3: 1}))
    with pytest.raises(ValueError):
        SurfaceInvariants(s=-1)
    with pytest.raises(ValueError):
        SurfaceInvariants(n=4, r=2, s_j={1: 2})


# coordinate change


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3).filter(any))
def test_coordinates_with_last_sends_form_to_last_variable(coeffs):
    u = XYZ.gens()
    form = sum((c * v for c, v in zip(coeffs, u)), XYZ.zero())
    A, B = coordinates_with_last(form)
    assert linear_change(form, A) == u[2]
    n = len(A)
    prod = [[sum(B[i][k] * A[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert prod == [[int(i == j) for j in range(n)] for i in range(n)]


# curve statements


def test_thm26_on_a_line():
    rep = verify_thm26(Ideal(XY, (y + x,)))
    assert rep.verdict == "pass"
    assert rep.left == rep.right == 1
    assert PRIMALITY_NOTE in rep.assumptions
    d = rep.as_dict()
    assert d["artifacts"]["certificate"]["distinct_count_equals_degree"]
    assert d["artifacts"]["geometry"]["points_at_infinity"] == 1


def test_thm26_seed_invariance():
    a = verify_thm26(Ideal(XY, (y + x,)), seed=0)
    b = verify_thm26(Ideal(XY, (y + x,)), seed=5)
    assert a.left == b.left == 1


def test_thm26_refuses_non_complete_intersection():
    with pytest.raises(SpecError):
        verify_thm26(Ideal(XY, (x, x * y)))


def test_thm34a_on_cusp_like_curve():
    rep = verify_thm34a(Ideal(XY, (y + x ** 3,)))
    assert rep.passed
    assert (rep.left, rep.right) == (0, 0)


def test_graded_chi_on_coordinate_hyperplane():
    X, _, _ = XYZ.gens()
    rep = verify_graded_chi(Ideal(XYZ, (X,)))
    assert rep.passed
    assert rep.artifacts["module"]["dims"] == [0, 0, 1, 0]


def test_graded_chi_preconditions():
    X, Y, Z = XYZ.gens()
    with pytest.raises(SpecError):
        verify_graded_chi(Ideal(XYZ, (X * Y + 1,)))
    with pytest.raises(SpecError):
        verify_graded_chi(Ideal(XYZ, (X, Y)))


def test_laurent_extension_adds_a_localized_variable():
    ring = LocalizedModuleSpec.polynomial_ring(VariableContext(("x",)))
    M = laurent_extension(ring)
    assert M.ctx.names == ("x", "z")
    assert M.m == 1 and not M.quotient_set
    rep = verify_laurent_chi(ring)
    assert rep.passed
    assert rep.artifacts["module"]["dims"] == [0, 1, 1]


def test_laurent_extension_picks_fresh_name():
    ring = LocalizedModuleSpec.polynomial_ring(VariableContext(("z",)))
    assert laurent_extension(ring).ctx.arity == 2
    assert len(set(laurent_extension(ring).ctx.names)) == 2


# graph straightening


def test_graph_coordinates_twisted_cubic():
    X, Y, Z = XYZ.gens()
    P = Ideal(XYZ, (Y - X ** 2, Z - X ** 3))
    images, pivots = graph_coordinates(P)
    assert pivots == [1, 2]
    assert [g.substitute(images) for g in P.gens] == [Y, Z]
    # the inverse substitution x_k -> g_k undoes it
    inverse = [X, Y - X ** 2, Z - X ** 3]
    assert [im.substitute(inverse) for im in images] == [X, Y, Z]


def test_graph_coordinates_rejects_other_shapes():
    X, Y, Z = XYZ.gens()
    assert graph_coordinates(Ideal(XYZ, (X * Y + 1, Z - X * Y))) is None
    assert graph_coordinates(Ideal(XYZ, (Y - X ** 2, Z - Y))) is None


@given(polynomials(VariableContext(("x",)), max_terms=3, max_exp=3),
       st.integers(1, 3).filter(bool))
def test_graph_coordinates_plane_property(h, c):
    h = h.substitute([x])
    P = Ideal(XY, (y * c - h,))
    images, pivots = graph_coordinates(P)
    assert pivots == [1]
    assert P.gens[0].substitute(images) == y


@pytest.mark.parametrize("f,degree", [(y + x, 1), (y + x ** 2 - 1, 2)])
def test_thm26_straightened_route(f, degree):
    rep = verify_thm26(Ideal(XY, (f,)), straighten=True)
    assert rep.inputs["coordinates"] == "graph straightened"
    assert rep.passed and rep.left == degree


def test_thm26_routes_agree_on_parabola():
    P = Ideal(XY, (y + x ** 2 - 1,))
    lefts = {verify_thm26(P, **kw).left
             for kw in ({}, {"original_coordinates": True}, {"straighten": True})}
    assert lefts == {2}


def test_thm26_straighten_needs_graph_form():
    with pytest.raises(SpecError):
        verify_thm26(Ideal(XY, (x * y + 1,)), straighten=True)
